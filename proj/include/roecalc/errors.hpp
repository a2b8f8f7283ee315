#pragma once

#include <stdexcept>
#include <string>

namespace roecalc {

// Malformed input: dimension mismatches, non-finite entries, unknown labels,
// mismatched spaces. Distinct from a metric that is well-formed but fails
// validation, which is reported through ValidationReport instead.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON input that does not follow the expected schema. `field` is a JSON
// pointer to the offending value (empty when the document failed to parse).
class SchemaError : public StructuralError {
 public:
  SchemaError(std::string field, const std::string& message)
      : StructuralError(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace roecalc
