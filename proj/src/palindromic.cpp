#include "pherm/palindromic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "pherm/branches.hpp"
#include "pherm/error.hpp"

namespace pherm {

Eigen::MatrixXcd PalindromicPoly::eval(cplx z) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(size(), size());
  for (int i = grade; i >= 0; --i) acc = (acc * z + coeffs[i]).eval();
  return acc;
}

Eigen::MatrixXcd PalindromicPoly::derivative(cplx z) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(size(), size());
  for (int i = grade; i >= 1; --i) acc = (acc * z + static_cast<double>(i) * coeffs[i]).eval();
  return acc;
}

double PalindromicPoly::norm() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, Eigen::JacobiSVD<Eigen::MatrixXcd>(c).singularValues()(0));
  return m;
}

void PalindromicPoly::validate() const {
  if (grade < 0 || static_cast<int>(coeffs.size()) != grade + 1) {
    throw ShapeError("palindromic polynomial: need grade + 1 coefficients");
  }
  const int n = size();
  for (const auto& c : coeffs)
    if (c.rows() != n || c.cols() != n || n == 0) throw ShapeError("palindromic polynomial: coefficients must be n x n");
  const double tol = 1e-12 * std::max(1.0, norm());
  for (int i = 0; i <= grade; ++i) {
    const double dev = (coeffs[i] - coeffs[grade - i].adjoint()).norm();
    if (dev > tol) {
      throw NotPalindromic("P_" + std::to_string(i) + " != P_" + std::to_string(grade - i) + "^* (deviation " +
                           std::to_string(dev) + ")");
    }
  }
}

PalindromicPoly operator+(const PalindromicPoly& p, const PalindromicPoly& q) {
  if (p.grade != q.grade || p.size() != q.size()) throw ShapeError("palindromic sum: grade or size differ");
  PalindromicPoly out = p;
  for (int i = 0; i <= p.grade; ++i) out.coeffs[i] += q.coeffs[i];
  return out;
}

double branch_angle_of(cplx z, double tau) {
  double t = std::arg(z);  // (-pi, pi]
  while (t > tau) t -= 2.0 * kPi;
  while (t <= tau - 2.0 * kPi) t += 2.0 * kPi;
  return t;
}

LaurentMatrix to_para_hermitian(const PalindromicPoly& p) {
  p.validate();
  const int n = p.size();
  const int g = p.grade;
  LaurentMatrix r(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // Exponent of z^{(2i - g)/2} in units of z^{1/2} is 2i - g.
      std::vector<cplx> c(2 * g + 1, cplx{0.0, 0.0});
      for (int i = 0; i <= g; ++i) c[2 * i] = p.coeffs[i](a, b);
      r(a, b) = FracLaurent(2, -g, std::move(c));
    }
  }
  return r;
}

namespace {

bool is_regular(const PalindromicPoly& p) {
  // det P is a polynomial; it is identically zero iff it vanishes at every
  // point of a small generic set.
  const double radii[] = {0.5, 1.0, 2.0};
  for (double rad : radii) {
    for (int k = 0; k < 3; ++k) {
      const cplx z = std::polar(rad, 0.37 + 2.1 * k);
      const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(p.eval(z)).singularValues();
      if (sv(sv.size() - 1) > 1e-12 * std::max(sv(0), 1e-300)) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<cplx> polynomial_eigenvalues(const PalindromicPoly& p) {
  p.validate();
  if (!is_regular(p)) throw NotRegular("det P(z) vanishes identically");
  const int n = p.size();
  const int g = p.grade;
  if (g == 0) return {};

  // First companion pencil: z X + Y with X = diag(P_g, I, ..., I) and
  // Y = [P_{g-1} ... P_0; -I 0 ...; ...]; solve -Y v = z X v.
  const int dim = n * g;
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(dim, dim);
  X.topLeftCorner(n, n) = p.coeffs[g];
  for (int k = 0; k < g; ++k) Y.block(0, k * n, n, n) = p.coeffs[g - 1 - k];
  for (int k = 1; k < g; ++k) Y.block(k * n, (k - 1) * n, n, n) = -Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd A = -Y;
  Eigen::MatrixXcd B = X;
  std::vector<cplx> alpha(dim), beta(dim);
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', dim, A.data(), dim, B.data(), dim, alpha.data(),
                                        beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw StructureError("zggev failed with info = " + std::to_string(info));
  std::vector<cplx> out;
  for (int k = 0; k < dim; ++k) {
    if (std::abs(beta[k]) > 0.0 && std::abs(alpha[k]) < 1e10 * std::abs(beta[k])) out.push_back(alpha[k] / beta[k]);
  }
  return out;
}

UnimodularSpectrum unimodular_eigenvalues(const PalindromicPoly& p, double tol, double tau) {
  const auto eig = polynomial_eigenvalues(p);
  // Multiple roots come back split by O(eps^{1/m}); the cluster mean is accurate.
  const double radius = 1e-4;
  std::vector<char> used(eig.size(), 0);
  UnimodularSpectrum out;
  const cplx cut = std::polar(1.0, tau);
  for (std::size_t i = 0; i < eig.size(); ++i) {
    if (used[i]) continue;
    cplx sum = 0.0;
    int count = 0;
    for (std::size_t k = i; k < eig.size(); ++k) {
      if (!used[k] && std::abs(eig[k] - eig[i]) <= radius * std::max(1.0, std::abs(eig[i]))) {
        used[k] = 1;
        sum += eig[k];
        ++count;
      }
    }
    const cplx mean = sum / static_cast<double>(count);
    if (std::abs(std::abs(mean) - 1.0) > tol) continue;
    const cplx lam = mean / std::abs(mean);
    if (std::abs(lam - cut) <= radius) {
      out.branch_point_multiplicity += count;
      continue;
    }
    out.eigenvalues.push_back({lam, branch_angle_of(lam, tau), count});
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const UnimodularEigenvalue& a, const UnimodularEigenvalue& b) { return a.theta < b.theta; });
  return out;
}

namespace {

void check_unimodular(cplx lambda, double tau) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-6) throw RangeError("eigenvalue is not on the unit circle");
  if (std::abs(lambda - std::polar(1.0, tau)) < 1e-10) {
    throw MinusOneEigenvalue("eigenvalue lies on the branch line of the square root (exp(i tau))");
  }
}

// |t_m| scale of an order-m Taylor coefficient of f: sum_k |a_k| |k/N|^m / m!.
double taylor_scale(const FracLaurent& f, int m) {
  double s = 0.0;
  for (int k = f.lo(); k <= f.hi(); ++k) s += std::abs(f.coeff(k)) * std::pow(std::abs(static_cast<double>(k)) / f.den(), m);
  return s / std::tgamma(m + 1.0);
}

double taylor_coeff(const FracLaurent& f, double theta, int m) {
  return lp_eval_derivative(f, theta, m).real() / std::tgamma(m + 1.0);
}

}  // namespace

SignReport sign_characteristics(const PalindromicPoly& p, cplx lambda, const SignOptions& opts) {
  check_unimodular(lambda, opts.tau);
  const LaurentMatrix r = to_para_hermitian(p);
  const EvdResult evd = analytic_evd(r, opts.evd);
  SignReport out;
  out.lambda = lambda / std::abs(lambda);
  out.theta0 = branch_angle_of(out.lambda, opts.tau);

  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < evd.D.rows(); ++i) {
    const FracLaurent& f = evd.D(i, i);
    const double s0 = taylor_scale(f, 0);
    if (s0 == 0.0) continue;  // identically zero branch
    if (std::abs(taylor_coeff(f, out.theta0, 0)) > 1e-8 * s0) continue;  // does not vanish here

    // Order of the zero: first Taylor coefficient that is significant on the
    // scale of that coefficient. The relative bar absorbs the error in theta0.
    int m = 0;
    for (int j = 1; j <= opts.max_order; ++j) {
      const double sj = taylor_scale(f, j);
      const double bar = std::max(1e3 * eps * sj, 1e-6 * sj);
      if (std::abs(taylor_coeff(f, out.theta0, j)) > bar) {
        m = j;
        break;
      }
    }
    if (m == 0) {
      throw DegenerateFit("no derivative up to order " + std::to_string(opts.max_order) +
                          " clears the noise floor for branch " + std::to_string(i));
    }
    // Polish theta0 as the simple root of F^{(m-1)}.
    double th = out.theta0;
    for (int it = 0; it < 8; ++it) {
      const double step = lp_eval_derivative(f, th, m - 1).real() / lp_eval_derivative(f, th, m).real();
      if (!std::isfinite(step) || std::abs(step) > 1e-6) break;
      th -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double t = taylor_coeff(f, th, m);
    SignEntry e;
    e.m = m;
    e.eps = t > 0.0 ? 1 : -1;
    e.c = std::abs(t);
    e.feature = (m % 2 == 1) ? e.eps : 0;
    out.entries.push_back(e);
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SignEntry& a, const SignEntry& b) { return a.m < b.m; });
  return out;
}

SignSimple sign_simple(const PalindromicPoly& p, cplx lambda, const Eigen::VectorXcd& v, double tau) {
  p.validate();
  check_unimodular(lambda, tau);
  if (v.size() != p.size()) throw ShapeError("sign_simple: eigenvector has the wrong length");
  const cplx z = lambda / std::abs(lambda);
  const double theta0 = branch_angle_of(z, tau);
  const Eigen::MatrixXcd pz = p.eval(z);
  const double scale = std::max(p.norm(), 1e-300) * v.norm();
  if ((pz * v).norm() > 1e-8 * scale) throw NotEigenvector("sign_simple: P(lambda) v is not zero");

  const int g = p.grade;
  const Eigen::MatrixXcd h = std::polar(1.0, -theta0 * g / 2.0) * pz;
  if (h.rows() > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    Eigen::VectorXd a = es.eigenvalues().cwiseAbs();
    std::sort(a.data(), a.data() + a.size());
    if (a(1) < 1e-8 * std::max(1.0, h.norm())) {
      throw NearDegenerate("sign_simple: eigenvalue is not simple (second eigenvalue of H(theta0) is " +
                           std::to_string(a(1)) + ")");
    }
  }
  const cplx w = cplx(0.0, 1.0) * std::polar(1.0, theta0 * (1.0 - g / 2.0)) *
                 (v.adjoint() * p.derivative(z) * v)(0, 0);
  if (std::abs(w.imag()) > 1e-8 * std::abs(w.real()) + 1e-12 * scale * v.norm()) {
    throw NotEigenvector("sign_simple: v^* H'(theta0) v is not real; v is not an eigenvector");
  }
  // A vanishing first derivative means the branch has a multiple zero here.
  double dscale = 0.0;
  for (int i = 1; i <= g; ++i) dscale += i * Eigen::JacobiSVD<Eigen::MatrixXcd>(p.coeffs[i]).singularValues()(0);
  if (std::abs(w.real()) <= 1e-8 * dscale * v.squaredNorm()) {
    throw NearDegenerate("sign_simple: v^* P'(lambda) v vanishes; the eigenvalue is not simple");
  }
  return {w.real(), w.real() > 0.0 ? 1 : -1};
}

Eigen::VectorXcd null_vector(const PalindromicPoly& p, cplx lambda) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p.eval(lambda), Eigen::ComputeFullV);
  return svd.matrixV().col(p.size() - 1);
}

PerturbationReport perturbation_check(const PalindromicPoly& p, const PalindromicPoly& dp,
                                      const UnimodularEigenvalue& cluster, double tol) {
  auto eig = polynomial_eigenvalues(p + dp);
  std::sort(eig.begin(), eig.end(), [&](cplx a, cplx b) {
    return std::abs(a - cluster.lambda) < std::abs(b - cluster.lambda);
  });
  PerturbationReport out;
  const int count = std::min<int>(cluster.multiplicity, static_cast<int>(eig.size()));
  for (int k = 0; k < count; ++k) {
    out.new_eigenvalues.push_back(eig[k]);
    out.max_radial_deviation = std::max(out.max_radial_deviation, std::abs(std::abs(eig[k]) - 1.0));
  }
  out.moved_off_circle = out.max_radial_deviation > tol;
  return out;
}

std::vector<PerturbationReport> perturbation_track(const PalindromicPoly& p, const PalindromicPoly& dp,
                                                   const UnimodularSpectrum& spectrum, double tol) {
  const auto eig = polynomial_eigenvalues(p + dp);
  std::vector<int> slot_cluster;
  for (std::size_t c = 0; c < spectrum.eigenvalues.size(); ++c)
    for (int k = 0; k < spectrum.eigenvalues[c].multiplicity; ++k) slot_cluster.push_back(static_cast<int>(c));
  const int size = static_cast<int>(std::max(slot_cluster.size(), eig.size()));
  // weights: larger is closer; padding rows and columns weigh nothing
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t s = 0; s < slot_cluster.size(); ++s)
    for (std::size_t k = 0; k < eig.size(); ++k)
      w(s, k) = 1.0 / (1.0 + std::abs(eig[k] - spectrum.eigenvalues[slot_cluster[s]].lambda));
  const auto match = max_weight_assignment(w);

  std::vector<PerturbationReport> out(spectrum.eigenvalues.size());
  for (std::size_t s = 0; s < slot_cluster.size(); ++s) {
    if (match[s] >= static_cast<int>(eig.size())) continue;  // eigenvalue went to infinity
    PerturbationReport& r = out[slot_cluster[s]];
    const cplx z = eig[match[s]];
    r.new_eigenvalues.push_back(z);
    r.max_radial_deviation = std::max(r.max_radial_deviation, std::abs(std::abs(z) - 1.0));
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c].moved_off_circle = out[c].max_radial_deviation > tol ||
                              static_cast<int>(out[c].new_eigenvalues.size()) < spectrum.eigenvalues[c].multiplicity;
  }
  return out;
}

}  // namespace pherm
