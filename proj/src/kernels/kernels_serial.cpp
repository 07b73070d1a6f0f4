#include "pherm/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

namespace pherm::kernels {

NodeEig hermitian_eig(const Eigen::MatrixXcd& h) {
  // Symmetrize so that rounding in the sampled entries cannot leak an
  // anti-Hermitian part into the solver.
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<cplx> eval_uniform_entry(const FracLaurent& f, int K, int den, double theta_start, double shift) {
  std::vector<cplx> out(K);
  const int step = den / f.den();
  const long span = static_cast<long>(f.hi() - f.lo()) * step + 1;
  if (den % f.den() != 0 || span > K) {
    for (int j = 0; j < K; ++j) out[j] = lp_eval(f, theta_start + 2.0 * kPi * den * (j + shift) / K);
    return out;
  }
  std::vector<cplx> spec(K, cplx{0.0, 0.0});
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{0.0, 0.0}) continue;
    const long m = static_cast<long>(f.lo() + static_cast<int>(i)) * step;
    const double phase = m * (theta_start / den + 2.0 * kPi * shift / K);
    spec[((m % K) + K) % K] += c[i] * std::polar(1.0, phase);
  }
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, spec);
  return out;
}

namespace serial {

std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas) {
  std::vector<Eigen::MatrixXcd> out(thetas.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) out[j] = a.eval(thetas[j]);
  return out;
}

std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples) {
  std::vector<NodeEig> out(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) out[j] = hermitian_eig(samples[j]);
  return out;
}

std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift) {
  std::vector<Eigen::MatrixXcd> out(K, Eigen::MatrixXcd(a.rows(), a.cols()));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const auto v = eval_uniform_entry(a(i, j), K, den, theta_start, shift);
      for (int t = 0; t < K; ++t) out[t](i, j) = v[t];
    }
  }
  return out;
}

}  // namespace serial

bool openmp_enabled() noexcept {
#ifdef PHERM_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas) {
  return openmp_enabled() ? omp::eval_nodes(a, thetas) : serial::eval_nodes(a, thetas);
}

std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples) {
  return openmp_enabled() ? omp::eig_nodes(samples) : serial::eig_nodes(samples);
}

std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift) {
  return openmp_enabled() ? omp::eval_uniform(a, K, den, theta_start, shift)
                          : serial::eval_uniform(a, K, den, theta_start, shift);
}

}  // namespace pherm::kernels
