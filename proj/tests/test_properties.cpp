#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roecalc/catalog.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/operator.hpp"
#include "roecalc/order.hpp"
#include "roecalc/validation.hpp"
#include "support.hpp"

using namespace roecalc;

namespace {

constexpr std::uint64_t kInstances = 120;

SpacePtr space(Rng& rng) { return random_bounded_geometry(1 + rng.below(8), 3, rng.next()); }

GlueMetric glue(Rng& rng, const SpacePtr& x, const SpacePtr& y) { return random_glue(x, y, rng.next()); }

GlueMetric plus(const GlueMetric& g, double c) {
  Matrix m = g.cross();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += c;
  return GlueMetric(g.left(), g.right(), std::move(m));
}

bool dominated(const Matrix& a, const Matrix& b, double tol = 1e-9) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) > b(i, j) + tol) return false;
  return true;
}

Operator random_operator(Rng& rng, const SpacePtr& source, const SpacePtr& target) {
  std::vector<Operator::Entry> entries;
  for (std::size_t r = 0; r < target->size(); ++r)
    for (std::size_t c = 0; c < source->size(); ++c)
      if (rng.unit() < 0.35) entries.push_back({r, c, Complex{rng.unit() * 2 - 1, rng.unit() * 2 - 1}});
  return Operator(source, target, std::move(entries));
}

}  // namespace

TEST_CASE("composition is associative and matches the min-plus product") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed);
    const SpacePtr w = space(rng), x = space(rng), y = space(rng), z = space(rng);
    const GlueMetric a = glue(rng, w, x), b = glue(rng, x, y), c = glue(rng, y, z);
    const GlueMetric ab = compose_glue(a, b);
    CHECK(oracle::max_abs_diff(ab.cross(), oracle::min_plus(a.cross(), b.cross())) == 0.0);
    CHECK(oracle::glue_is_metric(ab));
    CHECK(oracle::max_abs_diff(compose_glue(ab, c).cross(), compose_glue(a, compose_glue(b, c)).cross()) < 1e-9);
  }
}

TEST_CASE("adjoints reverse composition") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 1000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const GlueMetric a = glue(rng, x, y), b = glue(rng, y, z);
    CHECK(adjoint_glue(adjoint_glue(a)) == a);
    CHECK(adjoint_glue(compose_glue(a, b)) == compose_glue(adjoint_glue(b), adjoint_glue(a)));
  }
}

TEST_CASE("g composed with its adjoint dominates d0 minus one") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 2000);
    const SpacePtr x = space(rng), y = space(rng);
    const GlueMetric g = glue(rng, x, y);
    const Matrix back = compose_glue(g, adjoint_glue(g)).cross();
    const GlueMetric d0 = identity_glue(x);
    for (std::size_t i = 0; i < x->size(); ++i)
      for (std::size_t j = 0; j < x->size(); ++j) CHECK(back(i, j) >= d0(i, j) - 1.0 - 1e-9);
  }
}

TEST_CASE("composition is stable under bounded perturbation") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 3000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const GlueMetric a = glue(rng, x, y), b = glue(rng, y, z);
    const double eps = 0.25 + rng.unit();
    Matrix noisy = a.cross();
    for (std::size_t i = 0; i < noisy.rows(); ++i)
      for (std::size_t j = 0; j < noisy.cols(); ++j) noisy(i, j) += eps * (2 * rng.unit() - 1);
    const Matrix exact = compose_glue(a, b).cross();
    const Matrix perturbed = oracle::min_plus(noisy, b.cross());
    CHECK(oracle::max_abs_diff(exact, perturbed) <= eps + 1e-9);
  }
}

TEST_CASE("composition and adjoint are monotone") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 4000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const GlueMetric g = glue(rng, x, y), h = glue(rng, y, z);
    const GlueMetric larger = plus(g, static_cast<double>(rng.below(5)));
    CHECK(dominated(compose_glue(g, h).cross(), compose_glue(larger, h).cross()));
    CHECK(dominated(compose_glue(adjoint_glue(h), adjoint_glue(g)).cross(),
                    compose_glue(adjoint_glue(h), adjoint_glue(larger)).cross()));
    CHECK(dominated(adjoint_glue(g).cross(), adjoint_glue(larger).cross()));
  }
}

TEST_CASE("map-induced glues are metrics and match the formula") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 5000);
    const SpacePtr x = space(rng), y = space(rng);
    const PartialMap f = oracle::random_partial_map(rng, x, y);
    const double eps = 0.5 + rng.unit();
    const GlueMetric df = glue_from_map(f, eps);
    const double c = std::max(oracle::defect(f), eps);
    CHECK(defect(f).defect == oracle::defect(f));
    CHECK(effective_constant(f, eps) == c);
    CHECK(validate_glue(df).ok);
    CHECK(oracle::glue_is_metric(df));
    CHECK(oracle::max_abs_diff(df.cross(), oracle::induced_cross(f, c)) < 1e-12);

    // Raising epsilon past the defect shifts every cross distance by half the increase.
    const double big = c + 1.0 + rng.unit();
    CHECK(oracle::max_abs_diff(glue_from_map(f, big).cross(), plus(df, (big - c) / 2).cross()) < 1e-12);
  }
}

TEST_CASE("defect is subadditive under composition") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < kInstances; ++seed) {
    Rng rng(seed + 6000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const PartialMap f = oracle::random_partial_map(rng, x, y);
    const PartialMap g = oracle::random_partial_map(rng, y, z);
    bool meets = false;
    for (const auto& [a, b] : f.assignment()) meets = meets || g.image(b).has_value();
    if (!meets) continue;
    ++checked;
    const PartialMap gf = compose_maps(f, g);
    CHECK(defect(gf).defect <= defect(f).defect + defect(g).defect + 1e-12);
  }
}

TEST_CASE("operator norm laws") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 7000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const Operator t = random_operator(rng, x, y);
    const Operator t2 = random_operator(rng, x, y);
    const Operator s = random_operator(rng, y, z);
    const double nt = operator_norm(t);
    CHECK(operator_norm(adjoint(t)) == doctest::Approx(nt).epsilon(1e-9));
    CHECK(operator_norm(compose(s, t)) <= operator_norm(s) * nt + 1e-9);
    CHECK(operator_norm(add(t, t2)) <= nt + operator_norm(t2) + 1e-9);
    const Complex c{rng.unit() * 4 - 2, rng.unit() * 4 - 2};
    CHECK(operator_norm(scale(c, t)) == doctest::Approx(std::abs(c) * nt).epsilon(1e-9));
    // C*-identity: ||T*T|| = ||T||².
    CHECK(operator_norm(compose(adjoint(t), t)) == doctest::Approx(nt * nt).epsilon(1e-8));
  }
}

TEST_CASE("finite-propagation operators form a bimodule") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 8000);
    const SpacePtr x = space(rng), y = space(rng), z = space(rng);
    const GlueMetric gxy = glue(rng, x, y), gyz = glue(rng, y, z);
    const Operator t = random_operator(rng, x, y);
    const Operator t2 = random_operator(rng, x, y);
    const Operator s = random_operator(rng, y, z);
    const PropagationBoundReport r = propagation_bound_check(s, t, gxy, gyz);
    CHECK(r.holds);
    CHECK(propagation(compose(s, t), compose_glue(gxy, gyz)) <= propagation(s, gyz) + propagation(t, gxy) + 1e-9);
    CHECK(propagation(adjoint(t), adjoint_glue(gxy)) == propagation(t, gxy));
    CHECK(propagation(add(t, t2), gxy) <= std::max(propagation(t, gxy), propagation(t2, gxy)));
  }
}

TEST_CASE("the meet dominates both glues") {
  const double radii[] = {1, 2, 4, 8, 16, 32};
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 9000);
    const SpacePtr x = space(rng), y = space(rng);
    const GlueMetric g1 = glue(rng, x, y), g2 = glue(rng, x, y);
    const GlueMetric m = meet_glue(g1, g2);
    CHECK(oracle::glue_is_metric(m));
    CHECK(dominated(g1.cross(), m.cross()));
    CHECK(dominated(g2.cross(), m.cross()));
    const auto h = domination_values(m, g1, radii);
    for (std::size_t k = 0; k < std::size(radii); ++k) CHECK(h[k] <= radii[k]);
  }
}

TEST_CASE("the close map of a diagonal glue is the identity") {
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    Rng rng(seed + 10000);
    const SpacePtr x = space(rng);
    const auto got = extract_close_map(identity_glue(x), 1.0);
    REQUIRE(std::holds_alternative<PartialMap>(got));
    CHECK(std::get<PartialMap>(got) == identity_map(x));
  }
}
