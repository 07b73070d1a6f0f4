#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pherm/matfun.hpp"

// Per-node grid kernels. Every node is computed by the same pure function,
// so the serial and OpenMP variants produce bitwise identical output; the
// serial variant is the reference used by the tests and the benchmark.
namespace pherm::kernels {

/// Eigenpairs of one Hermitian sample, eigenvalues ascending.
struct NodeEig {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

NodeEig hermitian_eig(const Eigen::MatrixXcd& h);

/// One entry on the uniform grid theta_j = theta_start + 2*pi*den*(j + shift)/K
/// by a single inverse FFT; `den` must be a multiple of f.den() and K must
/// exceed the exponent span, otherwise falls back to direct evaluation.
std::vector<cplx> eval_uniform_entry(const FracLaurent& f, int K, int den, double theta_start, double shift);

namespace serial {
std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas);
std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples);
std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift);
}  // namespace serial

namespace omp {
std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas);
std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples);
std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift);
}  // namespace omp

bool openmp_enabled() noexcept;

/// Dispatch to the OpenMP kernels when built with OpenMP, else serial.
std::vector<Eigen::MatrixXcd> eval_nodes(const LaurentMatrix& a, std::span<const double> thetas);
std::vector<NodeEig> eig_nodes(std::span<const Eigen::MatrixXcd> samples);
std::vector<Eigen::MatrixXcd> eval_uniform(const LaurentMatrix& a, int K, int den, double theta_start, double shift);

}  // namespace pherm::kernels
