#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polystab/hyperstability.hpp"
#include "polystab/matrix_polynomial.hpp"

namespace polystab {

enum class Family {
  mgt,                    // lambda^3 I + a lambda^2 I + lambda b R + c R
  subadd,                 // lambda^2 A2 + lambda A1 + A0, r||A1|| + r^2||A2|| < sigma_min(A0)
  ph_quadratic,           // lambda^2 R2 + lambda (J + R1) + R0
  ph_corollary_q,         // lambda^2 A2 + lambda (J + R) Q + A0
  psd_cubic_sector,       // lambda^3 R3 + lambda^2 R2 + lambda R1 + A0 + G
  palindromic_psd_cubic,  // lambda^3 R0 + lambda^2 R2 + lambda R1 + R0
  angle_cubic,            // lambda^3 R2 + (lambda^2 + lambda)(R1 + J) + R0
  pencil_aj,              // lambda (R1 + J) + (R0 + a J)
};

enum class Claim { stable, hyperstable };

const char* to_string(Family f);
const char* to_string(Claim c);
Family parse_family(const std::string& s);
const std::vector<Family>& all_families();

struct FamilyParams {
  Index n = 2;
  double a = 2.0;
  double b = 2.0;
  double c = 1.0;
  double r = 1.0;
  /// subadd: sigma_min(A0) >= margin * (r||A1|| + r^2||A2||).
  double margin = 2.0;
  /// Named parts that replace the generated ones (R, R0..R3, J, G, A0..A2, Q).
  std::map<std::string, CMatrix> matrices;
};

struct FamilyInstance {
  Family tag = Family::mgt;
  FamilyParams params;
  std::uint64_t seed = 0;
  std::map<std::string, CMatrix> parts;
  std::vector<CMatrix> coefficients;
  Region expected_region;
  Claim claim = Claim::hyperstable;

  /// Throws when the assembled coefficients are all zero.
  MatrixPolynomial polynomial() const;
};

/// Generates the named parts from the seed (overrides win) and assembles the
/// family formula without checking hypotheses.
FamilyInstance assemble_family(Family tag, const FamilyParams& params, std::uint64_t seed);

/// assemble_family followed by check_family_hypotheses; throws
/// std::invalid_argument naming the failed hypotheses.
FamilyInstance make_family(Family tag, const FamilyParams& params, std::uint64_t seed);

struct HypothesisCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct HypothesisReport {
  StabilityVerdict verdict;
  std::vector<HypothesisCheck> checks;
};

HypothesisReport check_family_hypotheses(const FamilyInstance& inst);

/// Hermitian PSD up to 1e-10 * ||M|| on the eigenvalues.
bool is_psd(const CMatrix& m);
bool is_skew(const CMatrix& m);
/// sigma_min of the stacked matrices > 1e-10 * scale.
bool kernels_trivial(const std::vector<CMatrix>& ms);

struct ClaimCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ClaimReport {
  bool ok = true;
  std::vector<ClaimCheck> checks;
  EigenReport eigen;
  std::optional<HyperSurveyReport> survey;
};

struct ClaimOptions {
  int samples = 500;
  int nx = 20;
  int budget = 200;
  int threads = 1;
};

/// Eigenvalues against the expected region, a hyperstability survey for
/// hyperstable claims, and the family's multivariate companions sampled over
/// the matching product regions.
ClaimReport verify_family_claim(const FamilyInstance& inst, const ClaimOptions& opt, std::uint64_t seed);

/// The quadratic generator lambda^2 R2 + 2 lambda (R1 + J) + R0 whose
/// degree transform under (lambda^2, lambda) is the angle cubic.
MatrixPolynomial angle_cubic_generator(const FamilyInstance& inst);

/// Multivariate companions: (z1 z2 R2 + z2 (J + R1) + R0) for ph_quadratic,
/// z1^2 A2 + z2 A1 + A0 for subadd, and the three two-variable cubic forms
/// for psd_cubic_sector with their sector half-widths.
struct Companion {
  std::string name;
  MultivariateMatrixPolynomial poly;
  Region region;  // planar; sampled as a power
};

std::vector<Companion> family_companions(const FamilyInstance& inst);

}  // namespace polystab
