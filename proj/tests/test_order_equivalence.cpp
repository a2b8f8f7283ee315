#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roecalc/catalog.hpp"
#include "roecalc/errors.hpp"
#include "roecalc/metric_calculus.hpp"
#include "roecalc/order.hpp"
#include "support.hpp"

using namespace roecalc;

namespace {

GlueMetric shifted(const GlueMetric& g, double by) {
  Matrix c = g.cross();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) += by;
  return GlueMetric(g.left(), g.right(), std::move(c));
}

MetricFamily shifted_family(int max_n, double by) {
  std::vector<int> idx;
  for (int n = 1; n <= max_n; ++n) idx.push_back(n);
  return MetricFamily(idx, [by](int n) { return shifted(identity_glue(z_interval(n)), by); }, "dzero+shift");
}

// Two copies of the interval, the second offset by one half along the line.
GlueMetric offset_copy(int n) {
  const SpacePtr x = z_interval(n);
  Matrix c(x->size(), x->size());
  for (std::size_t i = 0; i < x->size(); ++i)
    for (std::size_t j = 0; j < x->size(); ++j)
      c(i, j) = std::abs(static_cast<double>(i) - static_cast<double>(j) - 0.5) + 1.0;
  return GlueMetric(x, x, c);
}

double profile_oracle(const GlueMetric& g, const GlueMetric& gp, double r) {
  double best = -oracle::kInf;
  for (std::size_t i = 0; i < g.cross().rows(); ++i)
    for (std::size_t j = 0; j < g.cross().cols(); ++j)
      if (g(i, j) <= r) best = std::max(best, gp(i, j));
  return best;
}

const std::vector<double> kProbes = {1, 2, 4, 8, 16};

}  // namespace

TEST_CASE("domination profile") {
  const GlueMetric d0 = identity_glue(z_interval(6));
  const auto same = domination_profile(d0, d0, kProbes);
  REQUIRE(same.rows.size() == 1);
  CHECK(same.rows[0].values == std::vector<double>{1, 2, 4, 8, 13});

  const auto plus = domination_profile(d0, shifted(d0, 5), kProbes);
  CHECK(plus.rows[0].values == std::vector<double>{6, 7, 9, 13, 18});

  const double low[] = {0.5};
  CHECK(domination_profile(d0, d0, low).rows[0].values[0] == -oracle::kInf);

  for (int n : {2, 5, 9}) {
    const GlueMetric df = idem_scenario(n).at(n);
    const GlueMetric base = identity_glue(df.left());
    const double two[] = {2.0};
    const double h = domination_values(base, df, two)[0];
    CHECK(h >= 2.0 * n + 0.5);
    CHECK(h == profile_oracle(base, df, 2.0));
  }
  CHECK_THROWS_AS(domination_profile(d0, identity_glue(z_interval(2)), kProbes), StructuralError);
}

TEST_CASE("profiles are monotone in the radius and match the scan") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SpacePtr x = random_bounded_geometry(6, 3, seed);
    const SpacePtr y = random_bounded_geometry(5, 3, seed + 100);
    const GlueMetric g = random_glue(x, y, seed);
    const GlueMetric gp = random_glue(x, y, seed + 7);
    const std::vector<double> radii = {1, 2, 3, 5, 8, 13};
    const auto v = domination_values(g, gp, radii);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      CHECK(v[k] == profile_oracle(g, gp, radii[k]));
      if (k > 0) CHECK(v[k] >= v[k - 1]);
    }
  }
}

TEST_CASE("sequence classification") {
  CHECK(classify_sequence(std::vector<double>{1, 2}, 2.0) == Relation::Inconclusive);
  CHECK(classify_sequence(std::vector<double>{1, 3, 3, 3}, 2.0) == Relation::HoldsBounded);
  CHECK(classify_sequence(std::vector<double>{1, 2, 3, 4}, 2.0) == Relation::FailsGrowing);
  CHECK(classify_sequence(std::vector<double>{4, 4.5, 5, 6}, 2.0) == Relation::Inconclusive);
  CHECK(classify_sequence(std::vector<double>{1, 5, 4, 6}, 2.0) == Relation::Inconclusive);
  CHECK(classify_sequence(std::vector<double>{-oracle::kInf, 1, 2, 3}, 2.0) == Relation::FailsGrowing);
  CHECK(classify_sequence(std::vector<double>{-oracle::kInf, -oracle::kInf, -oracle::kInf}, 2.0) ==
        Relation::HoldsBounded);
  CHECK(to_string(Relation::FailsGrowing) == "fails-growing");
}

TEST_CASE("order and equivalence checks") {
  SUBCASE("d0 against itself") {
    const MetricFamily d0 = dzero_family(12);
    const EquivalenceVerdict e = equivalence_check(d0, d0, kProbes);
    CHECK(e.forward.relation == Relation::HoldsBounded);
    CHECK(e.backward.relation == Relation::HoldsBounded);
    CHECK(e.relation == Relation::HoldsBounded);
  }
  SUBCASE("the half-line example is below d0 but not equivalent") {
    const int n = 20;
    const MetricFamily df = idem_scenario(n);
    const MetricFamily d0 = dzero_family(n);
    const OrderVerdict below = order_check(df, d0, kProbes);
    const OrderVerdict above = order_check(d0, df, kProbes);
    CHECK(below.relation == Relation::HoldsBounded);
    CHECK(above.relation == Relation::FailsGrowing);
    for (const auto& [index, m] : above.per_index_max) CHECK(m >= 2.0 * index + 0.5);
    CHECK(above.slope >= 1.0);
    CHECK(equivalence_check(df, d0, kProbes).relation == Relation::FailsGrowing);
  }
  SUBCASE("a constant shift is equivalent") {
    const EquivalenceVerdict e = equivalence_check(dzero_family(10), shifted_family(10, 5), kProbes);
    CHECK(e.relation == Relation::HoldsBounded);
  }
  SUBCASE("every catalog family is equivalent to itself") {
    for (const MetricFamily& f : {idem_scenario(8), nonupper_scenario(8).first, nonupper_scenario(8).second}) {
      CHECK(equivalence_check(f, f, kProbes).relation == Relation::HoldsBounded);
    }
  }
  SUBCASE("short families are inconclusive") {
    const OrderVerdict v = order_check(dzero_family(2), dzero_family(2), kProbes);
    CHECK(v.relation == Relation::Inconclusive);
  }
  SUBCASE("index sets must agree") {
    CHECK_THROWS_AS(order_check(dzero_family(3), dzero_family(4), kProbes), StructuralError);
  }
}

TEST_CASE("inverse-semigroup sandwich") {
  const GlueMetric single(oracle::point("x"), oracle::point("y"), Matrix(1, 1, 1.0));
  const InvSemiReport s = inv_semi_check(single);
  CHECK(s.triple(0, 0) == 3.0);
  CHECK(s.upper_slack == 0.0);
  CHECK(s.holds);

  const GlueMetric d0 = identity_glue(z_interval(5));
  const InvSemiReport r = inv_semi_check(d0);
  CHECK(r.holds);
  CHECK(r.lower_slack == 2.0);
  for (std::size_t i = 0; i < d0.cross().rows(); ++i)
    for (std::size_t j = 0; j < d0.cross().cols(); ++j) CHECK(r.triple(i, j) == d0(i, j) + 2.0);

  const SpacePtr x = random_bounded_geometry(7, 3, 55);
  const SpacePtr y = random_bounded_geometry(6, 3, 56);
  const GlueMetric g = random_glue(x, y, 57);
  const Matrix triple = oracle::min_plus(oracle::min_plus(g.cross(), g.cross().transposed()), g.cross());
  CHECK(inv_semi_check(g).triple == triple);
}

TEST_CASE("idempotent check") {
  const UniformBoundReport d0 = idempotent_check(dzero_family(8));
  CHECK(d0.bound == 1.0);
  CHECK(d0.relation == Relation::HoldsBounded);

  const MetricFamily df = idem_scenario(8);
  const UniformBoundReport idem = idempotent_check(df);
  CHECK(idem.bound == 0.5);
  CHECK(idem.relation == Relation::HoldsBounded);
  const GlueMetric& g = df.at(8);
  const Matrix gg = oracle::min_plus(g.cross(), g.cross());
  for (std::size_t i = 0; i < gg.rows(); ++i)
    for (std::size_t j = 0; j < gg.cols(); ++j) CHECK(gg(i, j) == g(i, j) + 0.5);

  const UniformBoundReport reflected = idempotent_check(nonupper_scenario(8).second);
  CHECK(reflected.relation == Relation::FailsGrowing);
  CHECK(reflected.per_index.back().second > reflected.per_index.front().second);

  const MetricFamily cross_spaces({1, 2, 3}, [](int n) { return GlueMetric(z_interval(n), halfline(n), Matrix(2 * n + 1, n + 1, 40.0)); }, "mixed");
  CHECK_THROWS_AS(idempotent_check(cross_spaces), StructuralError);
}

TEST_CASE("selfadjoint check") {
  const UniformBoundReport d0 = selfadjoint_check(dzero_family(6));
  CHECK(d0.bound == 0.0);
  CHECK(d0.relation == Relation::HoldsBounded);
  const UniformBoundReport idem = selfadjoint_check(idem_scenario(6));
  CHECK(idem.bound == 0.0);

  const MetricFamily offset({1, 2, 3, 4, 5}, offset_copy, "offset");
  for (int n : offset.indices()) CHECK(oracle::glue_is_metric(offset.at(n)));
  const UniformBoundReport o = selfadjoint_check(offset);
  CHECK(o.bound == 1.0);
  CHECK(o.relation == Relation::HoldsBounded);
}

TEST_CASE("close pair matching") {
  for (int n : {1, 4, 9}) {
    CHECK(close_pair_matching(identity_glue(z_interval(n)), 1.0).size == static_cast<std::size_t>(2 * n + 1));
    CHECK(close_pair_matching(idem_scenario(n).at(n), 1.0).size == static_cast<std::size_t>(n + 1));
  }
  const SpacePtr x = z_interval(2);
  CHECK(close_pair_matching(GlueMetric(x, x, Matrix(5, 5, 10.0)), 5.0).size == 0);
  const ClosePairMatching m = close_pair_matching(identity_glue(x), 1.0);
  CHECK(m.pairs.front() == std::pair<Label, Label>{"-2", "-2"});
}

TEST_CASE("maximality inequality") {
  const SpacePtr x = z_interval(6);
  const PartialMap f = reflection_map(x);
  const GlueMetric df = glue_from_map(f);
  const std::vector<double> radii = {0.5, 1, 2};

  const MaximalityReport self = maximality_inequality_check(f, df, radii);
  CHECK(self.holds);
  CHECK(self.constant == 1.0);
  CHECK(self.h_at_half == 0.5);
  CHECK(self.min_slack == doctest::Approx(self.offset));

  const MaximalityReport plus = maximality_inequality_check(f, shifted(df, 2.0), radii);
  CHECK(plus.holds);
  CHECK(plus.min_slack == doctest::Approx(plus.offset + 2.0));

  const GlueMetric perturbed = compose_glue(df, identity_glue(x));
  const MaximalityReport p = maximality_inequality_check(f, perturbed, radii);
  double slack = oracle::kInf;
  const double offset = 0.5 + profile_oracle(df, perturbed, 0.5);
  for (std::size_t i = 0; i < x->size(); ++i)
    for (std::size_t j = 0; j < x->size(); ++j) slack = std::min(slack, perturbed(i, j) - df(i, j) + offset);
  CHECK(p.holds);
  CHECK(p.min_slack == doctest::Approx(slack));
  CHECK(p.max_violation == 0.0);
  CHECK(p.profile.size() == radii.size());
}
