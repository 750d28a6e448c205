#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace polystab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

/// Seedable random stream.
///
/// The engine is std::mt19937_64, seeded by running SplitMix64 over
/// (seed, stream). Normals come from Box-Muller on 53-bit uniforms so that
/// identical (seed, stream) pairs give bit-identical draws on every platform.
/// Independent streams of one seed are how sampling loops stay deterministic
/// when they are split across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on [0, 1).
  double uniform();
  double normal();
  /// Circular complex Gaussian with E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finaliser; used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

CMatrix random_gaussian(Index rows, Index cols, Rng& rng);
CVector random_unit_vector(Index n, Rng& rng);

/// Smallest singular value of a square matrix.
double sigma_min(const CMatrix& m);

/// Largest singular value (operator 2-norm). Zero for empty matrices.
double spectral_norm(const CMatrix& m);

/// Largest eigenvalue of the Hermitian part (M + M^H)/2.
double lambda_h(const CMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix. Throws when M is not
/// Hermitian to within 1e-12 * ||M||.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// B^H B for a complex Gaussian B drawn from `seed`; exactly Hermitian.
CMatrix gen_psd(Index n, std::uint64_t seed);

/// Exactly skew-Hermitian matrix. With `minus_i_psd` the result is G = i*H
/// for a PSD H, so that -iG is positive semi-definite.
CMatrix gen_skew(Index n, std::uint64_t seed, bool minus_i_psd = false);

/// Hermitian part (M + M^H)/2, exactly Hermitian.
CMatrix hermitian_part(const CMatrix& m);

}  // namespace polystab
