#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polystab/matrix_polynomial.hpp"

namespace polystab {

/// A pair (x, y) with y^H P(lambda) x free of zeros in `region`.
struct Certificate {
  CVector x;
  CVector y;
  Polynomial scalar;
  RootSet roots;
  Region region;
  std::string method;
};

/// Outcome of a certificate search. A missing certificate is not a proof
/// that none exists; `diagnostic` says which routes were tried.
struct CertificateSearch {
  std::optional<Certificate> certificate;
  std::string diagnostic;
  int candidates_tried = 0;

  bool found() const { return certificate.has_value(); }
};

/// Builds y^H P x and accepts it when it is nonzero and D-stable.
std::optional<Certificate> verify_certificate(const MatrixPolynomial& p, const CVector& x, const CVector& y,
                                              const Region& d, double tol = kBoundaryTol,
                                              const std::string& method = "given");

struct SpanDecomposition {
  bool dependent = false;
  cplx alpha = 0.0;
  cplx beta = 0.0;
  /// ||w - alpha u - beta v|| / ||w|| (0 when w = 0).
  double residual = 0.0;
};

/// Least-squares fit w ~ alpha u + beta v, tolerant of dependent or zero
/// u, v (minimum-norm coefficients). Throws when all three vectors vanish.
SpanDecomposition span_decompose(const CVector& w, const CVector& u, const CVector& v, double tol = 1e-8);

enum class Variant { a, b, c };

/// Certificate search following the case analysis for quadratics
/// lambda^2 A2 + lambda A1 + A0. Variant a designates A0 x, b designates
/// A1 x (needs 0 excluded from D), c designates A2 x (needs 0 excluded).
/// Every returned certificate is re-verified from its roots.
CertificateSearch structural_certificate_quadratic(const MatrixPolynomial& p, const CVector& x, const Region& d,
                                                   Variant variant, double tol = kBoundaryTol);

/// Cubic counterpart. Variant a needs the shape lambda^3 A0 + lambda^2 A2 +
/// lambda A1 + A0 and D free of the cube roots of -1; b and c need 0
/// excluded and accept general cubics.
CertificateSearch structural_certificate_cubic(const MatrixPolynomial& p, const CVector& x, const Region& d,
                                               Variant variant, double tol = kBoundaryTol);

/// P(lambda) = p(lambda) A + q(lambda) B with monic p, q (q may be zero) and
/// deg p >= deg q.
struct PencilForm {
  Polynomial p;
  Polynomial q;
  CMatrix a;
  CMatrix b;
};

std::optional<PencilForm> pencil_form_detect(const MatrixPolynomial& p, double tol = 1e-10);

/// Strategy cascade for one x: triangularisation of a detected p A + q B
/// form, the structural quadratic/cubic variants, the vectors A_j x and
/// their orthogonal residuals, then random unit y. `budget` caps the total
/// number of candidate y that are verified; 0 means no search at all.
CertificateSearch hyper_check(const MatrixPolynomial& p, const CVector& x, const Region& d, int budget,
                              std::uint64_t seed, double tol = kBoundaryTol);

enum class SurveyVerdict { all_certified, counterexample_candidate, inconclusive };

const char* to_string(SurveyVerdict v);

struct SurveyEntry {
  CVector x;
  std::optional<Certificate> certificate;
  std::string diagnostic;
  int candidates_tried = 0;
};

struct HyperSurveyReport {
  std::vector<SurveyEntry> entries;
  SurveyVerdict verdict = SurveyVerdict::inconclusive;
  /// First x for which a real search found nothing.
  std::optional<CVector> candidate;

  std::size_t sampled() const { return entries.size(); }
  std::size_t certified() const;
  std::size_t failures() const { return sampled() - certified(); }
};

/// hyper_check over the standard basis vectors followed by `nx` seeded
/// random unit vectors. Entry i uses a sub-seed of (seed, i), so results do
/// not depend on `threads`.
HyperSurveyReport hyper_survey(const MatrixPolynomial& p, const Region& d, int nx, int budget, std::uint64_t seed,
                               int threads = 1, double tol = kBoundaryTol);

/// Carries an all-certified survey of P over to P'. Requires C \ D convex,
/// entries of P' linearly independent, and every certificate to transfer.
HyperSurveyReport gauss_lucas_transfer(const MatrixPolynomial& p, const Region& d, const HyperSurveyReport& survey,
                                       double tol = kBoundaryTol);

}  // namespace polystab
