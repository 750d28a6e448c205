#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "polystab/families.hpp"
#include "polystab/matrix_polynomial.hpp"
#include "polystab/region.hpp"

namespace polystab {

using Json = nlohmann::ordered_json;

/// Malformed instance or region JSON.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file that cannot be opened.
class MissingFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Either a univariate or a multivariate instance, plus whatever metadata
/// block the file carried.
struct Instance {
  std::optional<MatrixPolynomial> univariate;
  std::optional<MultivariateMatrixPolynomial> multivariate;
  Json metadata;
};

/// Entries are [re, im] pairs; a bare number is read as a real entry.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, Index n);

/// {"n", "degree", "coefficients": [A_0, ..., A_d]}.
Json to_json(const MatrixPolynomial& p);
/// {"n", "variables", "terms": [{"exponent", "matrix"}]}.
Json to_json(const MultivariateMatrixPolynomial& p);

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

/// Reads and parses a file. Throws MissingFile or ParseError.
std::string read_file(const std::string& path);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

/// {"kind": "disc", "center": [re, im], "radius": r, "open": false} and the
/// like; a JSON string is parsed with parse_region.
Json region_to_json(const Region& d);
Region region_from_json(const Json& j);

/// Instance JSON for a family with its metadata block.
Json family_to_json(const FamilyInstance& inst);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace polystab
