#include "pherm/kernels.hpp"

namespace pherm::kernels::omp {

std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas) {
  const long count = static_cast<long>(thetas.size());
  std::vector<Eigen::MatrixXcd> out(count);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) out[j] = a.eval(thetas[j]);
  return out;
}

std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples) {
  const long count = static_cast<long>(samples.size());
  std::vector<NodeEig> out(count);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) out[j] = hermitian_eig(samples[j]);
  return out;
}

std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift) {
  std::vector<Eigen::MatrixXcd> out(K, Eigen::MatrixXcd(a.rows(), a.cols()));
  const long entries = static_cast<long>(a.rows()) * a.cols();
#pragma omp parallel for schedule(dynamic)
  for (long e = 0; e < entries; ++e) {
    const int i = static_cast<int>(e / a.cols());
    const int j = static_cast<int>(e % a.cols());
    const auto v = eval_uniform_entry(a(i, j), K, den, theta_start, shift);
    for (int t = 0; t < K; ++t) out[t](i, j) = v[t];
  }
  return out;
}

}  // namespace pherm::kernels::omp
