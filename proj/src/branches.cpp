#include "pherm/branches.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pherm/error.hpp"
#include "pherm/kernels.hpp"

namespace pherm {

PointwiseEvd pointwise_evd(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw ShapeError("pointwise_evd: matrix is not square");
  const double nrm = h.norm();
  if ((h - h.adjoint()).norm() > 1e-10 * nrm) throw NotHermitian("pointwise_evd: matrix is not Hermitian");
  auto e = kernels::hermitian_eig(h);
  return {std::move(e.values), std::move(e.vectors)};
}

int BranchSet::group_of(int branch) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int b : groups[g])
      if (b == branch) return static_cast<int>(g);
  return -1;
}

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights) {
  // Hungarian algorithm (potentials form) on cost = -weight, 1-based arrays.
  const int n = static_cast<int>(weights.rows());
  if (weights.cols() != n) throw ShapeError("max_weight_assignment: weight matrix is not square");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

namespace {

using MatFn = std::function<Eigen::MatrixXcd(double)>;

// A set of eigenvectors that continuation treats as one piece: a simple
// eigenvector, or a basis of a subspace that stays degenerate to first order.
using Unit = Eigen::MatrixXcd;

Eigen::MatrixXcd polar_factor(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Splits sorted index range [0, n) into clusters of consecutive values whose
// neighbours are within `tol`.
std::vector<std::pair<int, int>> clusters(const Eigen::VectorXd& values, double tol) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(values.size());
  int start = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || values(k) - values(k - 1) > tol) {
      out.emplace_back(start, k - start);
      start = k;
    }
  }
  return out;
}

class Continuer {
 public:
  Continuer(const ContinuationOptions& opts, MatFn eval, MatFn deriv, double scale)
      : opts_(opts), eval_(std::move(eval)), deriv_(std::move(deriv)), scale_(scale) {}

  std::vector<Unit> split(const kernels::NodeEig& e, double theta) const {
    std::vector<Unit> units;
    const double tol = opts_.gap_tol * scale_;
    for (auto [start, size] : clusters(e.values, tol)) {
      const Eigen::MatrixXcd y = e.vectors.middleCols(start, size);
      if (size == 1 || !deriv_) {
        units.push_back(y);
        continue;
      }
      // Degenerate cluster: the derivative restricted to the eigenspace
      // separates branches that merely cross here.
      const Eigen::MatrixXcd d = deriv_(theta);
      Eigen::MatrixXcd m = y.adjoint() * d * y;
      m = 0.5 * (m + m.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      const double dtol = opts_.gap_tol * std::max(d.norm(), scale_);
      const Eigen::MatrixXcd rotated = y * es.eigenvectors();
      for (auto [s2, n2] : clusters(es.eigenvalues(), dtol)) units.push_back(rotated.middleCols(s2, n2));
    }
    return units;
  }

  // Branch -> unit assignment from previous vectors, bisecting the step when
  // the overlaps are ambiguous.
  std::vector<int> assign(const Eigen::MatrixXcd& prev, double t0, double t1, const std::vector<Unit>& units,
                          int depth, double& confidence, int& refined) const {
    double conf = 0.0;
    auto asg = direct_assign(prev, units, conf);
    if (conf < opts_.refine_overlap && depth < opts_.refine_rounds && eval_) {
      const double tm = 0.5 * (t0 + t1);
      const auto em = kernels::hermitian_eig(eval_(tm));
      const auto mid_units = split(em, tm);
      double c1 = 1.0, c2 = 1.0;
      const auto a1 = assign(prev, t0, tm, mid_units, depth + 1, c1, refined);
      const Eigen::MatrixXcd mid = transport(prev, mid_units, a1);
      const auto a2 = assign(mid, tm, t1, units, depth + 1, c2, refined);
      ++refined;
      if (std::min(c1, c2) > conf) {
        asg = a2;
        conf = std::min(c1, c2);
      }
    }
    confidence = conf;
    return asg;
  }

  static std::vector<int> direct_assign(const Eigen::MatrixXcd& prev, const std::vector<Unit>& units,
                                        double& confidence) {
    const int n = static_cast<int>(prev.cols());
    std::vector<int> slot_unit;
    for (std::size_t u = 0; u < units.size(); ++u)
      for (int k = 0; k < units[u].cols(); ++k) slot_unit.push_back(static_cast<int>(u));
    Eigen::MatrixXd overlap(n, units.size());
    for (std::size_t u = 0; u < units.size(); ++u)
      for (int b = 0; b < n; ++b) overlap(b, u) = (units[u].adjoint() * prev.col(b)).norm();
    Eigen::MatrixXd w(n, n);
    for (int b = 0; b < n; ++b)
      for (int s = 0; s < n; ++s) w(b, s) = overlap(b, slot_unit[s]);
    const auto slot = max_weight_assignment(w);
    std::vector<int> asg(n);
    confidence = 1.0;
    for (int b = 0; b < n; ++b) {
      asg[b] = slot_unit[slot[b]];
      confidence = std::min(confidence, overlap(b, asg[b]));
    }
    return asg;
  }

  // New branch vectors: simple units are phase-aligned with the previous
  // vector, degenerate units are rotated onto the previous frame (Procrustes).
  static Eigen::MatrixXcd transport(const Eigen::MatrixXcd& prev, const std::vector<Unit>& units,
                                    const std::vector<int>& asg) {
    const int n = static_cast<int>(prev.cols());
    Eigen::MatrixXcd out(prev.rows(), n);
    for (std::size_t u = 0; u < units.size(); ++u) {
      std::vector<int> members;
      for (int b = 0; b < n; ++b)
        if (asg[b] == static_cast<int>(u)) members.push_back(b);
      if (members.empty()) continue;
      const Unit& y = units[u];
      Eigen::MatrixXcd vp(prev.rows(), members.size());
      for (std::size_t k = 0; k < members.size(); ++k) vp.col(k) = prev.col(members[k]);
      Eigen::MatrixXcd vn;
      if (members.size() == 1) {
        const cplx c = (y.col(0).adjoint() * vp.col(0))(0, 0);
        vn = std::abs(c) > 1e-300 ? Eigen::MatrixXcd(y.col(0) * (c / std::abs(c))) : Eigen::MatrixXcd(y.col(0));
      } else {
        vn = y * polar_factor(y.adjoint() * vp);
      }
      for (std::size_t k = 0; k < members.size(); ++k) out.col(members[k]) = vn.col(k);
    }
    return out;
  }

 private:
  ContinuationOptions opts_;
  MatFn eval_;
  MatFn deriv_;
  double scale_;
};

BranchSet run_continuation(std::vector<double> thetas, const std::vector<kernels::NodeEig>& eigs, MatFn eval,
                           MatFn deriv, const ContinuationOptions& opts) {
  BranchSet b;
  const int count = static_cast<int>(thetas.size());
  if (count == 0) throw RangeError("continue_branches: empty grid");
  const int n = static_cast<int>(eigs[0].values.size());
  b.n = n;
  b.thetas = std::move(thetas);
  double scale = 0.0;
  for (const auto& e : eigs)
    if (e.values.size() > 0) scale = std::max(scale, e.values.cwiseAbs().maxCoeff());
  b.scale = scale;
  const double unit_scale = scale > 0.0 ? scale : 1.0;

  Continuer cont(opts, std::move(eval), std::move(deriv), unit_scale);
  b.mu.resize(n, count);
  b.vectors.resize(count);

  auto rayleigh = [&](const kernels::NodeEig& e, const Eigen::MatrixXcd& v, int j) {
    const Eigen::MatrixXcd c = e.vectors.adjoint() * v;
    for (int i = 0; i < n; ++i) b.mu(i, j) = (c.col(i).cwiseAbs2().transpose() * e.values)(0, 0);
  };

  {
    const auto units = cont.split(eigs[0], b.thetas[0]);
    Eigen::MatrixXcd v(n, n);
    int col = 0;
    for (const auto& u : units) {
      v.middleCols(col, u.cols()) = u;
      col += static_cast<int>(u.cols());
    }
    b.vectors[0] = v;
    rayleigh(eigs[0], v, 0);
  }
  for (int j = 1; j < count; ++j) {
    const auto units = cont.split(eigs[j], b.thetas[j]);
    double conf = 1.0;
    const auto asg = cont.assign(b.vectors[j - 1], b.thetas[j - 1], b.thetas[j], units, 0, conf, b.refined_steps);
    b.min_confidence = std::min(b.min_confidence, conf);
    if (conf < opts.min_overlap) {
      throw ContinuationError("branch continuation lost track near theta = " + std::to_string(b.thetas[j]) +
                              " (overlap " + std::to_string(conf) + ")");
    }
    b.vectors[j] = Continuer::transport(b.vectors[j - 1], units, asg);
    rayleigh(eigs[j], b.vectors[j], j);
  }

  // Branches that agree at every node are the same function.
  const double same_tol = 1e-8 * unit_scale;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if ((b.mu.row(i) - b.mu.row(k)).cwiseAbs().maxCoeff() <= same_tol) parent[find(k)] = find(i);
  for (int i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    std::vector<int> g;
    for (int k = 0; k < n; ++k)
      if (find(k) == i) g.push_back(k);
    b.groups.push_back(std::move(g));
  }
  return b;
}

}  // namespace

BranchSet continue_branches(const LaurentMatrix& a, int K, int periods, const ContinuationOptions& opts) {
  if (!a.square()) throw ShapeError("continue_branches: matrix is not square");
  if (K < 2 || periods < 1) throw RangeError("continue_branches: need K >= 2 and periods >= 1");
  const int den = a.den();
  const double T = 2.0 * kPi * den;
  const double start = -kPi * den;
  const double shift = 0.5;
  std::vector<double> thetas(static_cast<std::size_t>(K) * periods);
  for (std::size_t j = 0; j < thetas.size(); ++j) thetas[j] = start + T * (static_cast<double>(j) + shift) / K;
  const auto samples = kernels::eval_uniform(a, K * periods, den * periods, start, shift);
  const auto eigs = kernels::eig_nodes(samples);
  BranchSet b = run_continuation(
      thetas, eigs, [&a](double t) { return a.eval(t); }, [&a](double t) { return a.eval_derivative(t, 1); },
      opts);
  b.den = den;
  b.K = K;
  b.periods = periods;
  b.theta_start = start;
  b.shift = shift;
  return b;
}

BranchSet continue_branches(const GridSamples& samples, const ContinuationOptions& opts) {
  const auto eigs = kernels::eig_nodes(samples.values);
  BranchSet b = run_continuation(samples.thetas, eigs, {}, {}, opts);
  b.den = samples.den;
  b.K = samples.K;
  b.periods = 1;
  b.theta_start = -kPi * samples.den;
  b.shift = 0.0;
  return b;
}

std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int k = i; !seen[k]; k = sigma[k]) {
      seen[k] = 1;
      cyc.push_back(k);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> refine_permutation(const std::vector<int>& sigma, const std::vector<std::vector<bool>>& same) {
  std::vector<int> out = sigma;
  for (const auto& cyc : permutation_cycles(sigma)) {
    const int q = static_cast<int>(cyc.size());
    // Smallest p with mu_{sigma^p(i)} == mu_i; it divides q.
    int p = q;
    for (int d = 1; d < q; ++d) {
      if (q % d == 0 && same[cyc[0]][cyc[d]]) {
        p = d;
        break;
      }
    }
    for (int s = 0; s < q; s += p)
      for (int k = 0; k < p; ++k) out[cyc[s + k]] = cyc[s + (k + 1) % p];
  }
  return out;
}

PermutationInfo detect_permutation(BranchSet& b, int max_period) {
  if (b.periods < 2) throw RangeError("detect_permutation: branches must cover two base periods");
  const int n = b.n;
  const int K = b.K;
  const double tol = 1e-8 * std::max(1.0, b.scale);
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      cost(i, k) = (b.mu.row(i).segment(K, K) - b.mu.row(k).segment(0, K)).cwiseAbs().maxCoeff();
  auto sigma = max_weight_assignment(-cost);
  for (int i = 0; i < n; ++i) {
    if (cost(i, sigma[i]) > tol) {
      throw PeriodUndetected("no branch matches branch " + std::to_string(i) +
                             " one period later (mismatch " + std::to_string(cost(i, sigma[i])) + ")");
    }
  }
  std::vector<std::vector<bool>> same(n, std::vector<bool>(n, false));
  for (const auto& g : b.groups)
    for (int i : g)
      for (int k : g) same[i][k] = true;
  sigma = refine_permutation(sigma, same);

  PermutationInfo info;
  info.sigma = sigma;
  info.orbits = permutation_cycles(sigma);
  info.alpha.assign(n, 1);
  long L = 1;
  for (const auto& cyc : info.orbits) {
    for (int i : cyc) info.alpha[i] = static_cast<int>(cyc.size());
    L = std::lcm(L, static_cast<long>(cyc.size()));
  }
  info.L = static_cast<int>(L);
  if (max_period > 0 && static_cast<long>(info.L) * b.den > max_period) {
    throw PeriodUndetected("eigenvalue period " + std::to_string(info.L * b.den) + " exceeds max_period " +
                           std::to_string(max_period));
  }
  b.sigma = info.sigma;
  b.orbits = info.orbits;
  b.alpha = info.alpha;
  b.L = info.L;
  return info;
}

long landau(int n) {
  if (n < 1 || n > 20) throw RangeError("landau: n must be in [1, 20]");
  long best = 1;
  std::function<void(int, int, long)> rec = [&](int left, int max_part, long acc) {
    best = std::max(best, acc);
    for (int p = std::min(left, max_part); p >= 2; --p) rec(left - p, p, std::lcm(acc, static_cast<long>(p)));
  };
  rec(n, n, 1);
  return best;
}

}  // namespace pherm
