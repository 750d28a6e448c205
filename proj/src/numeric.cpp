#include "polystab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace polystab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= salt * 0xD1B54A32D192ED03ULL;
  return a ^ splitmix64(state);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = mix_seed(seed, stream);
  std::seed_seq seq{static_cast<std::uint32_t>(state), static_cast<std::uint32_t>(state >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * kPi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  // column-major fill order is part of the determinism contract
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

CVector random_unit_vector(Index n, Rng& rng) {
  CVector v(n);
  double norm = 0.0;
  do {
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

double sigma_min(const CMatrix& m) {
  require_square(m, "sigma_min");
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix hermitian_part(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  return h;
}

double lambda_h(const CMatrix& m) {
  require_square(m, "lambda_h");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > 1e-12 * scale) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

CMatrix gen_psd(Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_psd: n must be >= 1");
  Rng rng(seed, 0x5053);
  const CMatrix b = random_gaussian(n, n, rng);
  const CMatrix a = b.adjoint() * b;
  return hermitian_part(a);
}

CMatrix gen_skew(Index n, std::uint64_t seed, bool minus_i_psd) {
  if (n < 1) throw std::invalid_argument("gen_skew: n must be >= 1");
  if (minus_i_psd) {
    const CMatrix h = gen_psd(n, mix_seed(seed, 0x4753));
    CMatrix g = cplx(0.0, 1.0) * h;
    return g;
  }
  Rng rng(seed, 0x534B);
  const CMatrix b = random_gaussian(n, n, rng);
  CMatrix j = 0.5 * (b - b.adjoint());
  return j;
}

}  // namespace polystab
