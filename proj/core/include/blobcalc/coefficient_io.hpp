#pragma once

#include <stdexcept>
#include <string>

#include "blobcalc/category.hpp"

namespace blobcalc {

/// Thrown when a coefficient file is not syntactically or structurally a
/// valid presentation file (malformed JSON, bad scalar strings, unknown
/// objects or basis names). Category-law violations are not parse errors;
/// they are reported by validate().
class CoefficientParseError : public std::runtime_error {
public:
    CoefficientParseError(const std::string& message, int line, int column)
        : std::runtime_error(message), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Parses the UTF-8 JSON coefficient format:
///   name        string
///   field       {"char": 0} or {"char": p}
///   objects     list of object names (no commas in names)
///   hom         object, key "src,dst", value list of basis names; absent
///               keys mean a zero hom space
///   compose     list of ["src,mid,dst", a, b, k, "n/d"]; omitted entries
///               are zero
///   identities  object, key = object name, value list of [basis, "n/d"]
CategoryPresentation parse_coefficient_json(const std::string& text);

/// Deterministic serialization of a presentation in the same format.
std::string serialize_coefficient_json(const CategoryPresentation& c);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string coefficient_hash(const CategoryPresentation& c);

}  // namespace blobcalc
