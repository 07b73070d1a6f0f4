#include "pherm/evd.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>

#include "pherm/error.hpp"

namespace pherm {

namespace detail {

namespace {

Eigen::MatrixXcd group_frame(const BranchSet& b, const std::vector<int>& members, int node) {
  Eigen::MatrixXcd f(b.n, members.size());
  for (std::size_t k = 0; k < members.size(); ++k) f.col(k) = b.vectors[node].col(members[k]);
  return f;
}

}  // namespace

EigenSamples sample_eigenstructure(const LaurentMatrix& a, int K, const ContinuationOptions& opts) {
  EigenSamples out;
  out.branches = continue_branches(a, K, 2, opts);
  BranchSet& b = out.branches;
  detect_permutation(b, 0);
  out.den = b.den;
  out.K = K;
  out.theta_start = b.theta_start;
  out.shift = b.shift;

  // Permutation of whole groups; sigma maps a group onto one group.
  const int ng = static_cast<int>(b.groups.size());
  std::vector<int> tau(ng);
  for (int g = 0; g < ng; ++g) tau[g] = b.group_of(b.sigma[b.groups[g][0]]);
  const int lead_node = K / 2;  // first node with theta > 0
  for (auto cyc : permutation_cycles(tau)) {
    auto lead = std::max_element(cyc.begin(), cyc.end(), [&](int x, int y) {
      return b.mu(b.groups[x][0], lead_node) < b.mu(b.groups[y][0], lead_node);
    });
    std::rotate(cyc.begin(), lead, cyc.end());
    const int p = static_cast<int>(cyc.size());
    const int q = static_cast<int>(b.groups[cyc[0]].size());

    // Chain the group frames over p periods: on period k the continued frame of
    // G_1 is the frame of G_{k+1} times the accumulated overlap product.
    std::vector<Eigen::MatrixXcd> frames(static_cast<std::size_t>(p) * K + 1);
    OrbitSamples orb;
    orb.period = p;
    orb.q = q;
    orb.mu.resize(static_cast<std::size_t>(p) * K);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(q, q);
    for (int k = 0; k < p; ++k) {
      const auto& g = b.groups[cyc[k]];
      if (k > 0) acc = group_frame(b, g, 0).adjoint() * group_frame(b, b.groups[cyc[k - 1]], K) * acc;
      for (int j = 0; j < K; ++j) {
        frames[static_cast<std::size_t>(k) * K + j] = group_frame(b, g, j) * acc;
        orb.mu[static_cast<std::size_t>(k) * K + j] = b.mu(g[0], j);
      }
    }
    const auto& g1 = b.groups[cyc[0]];
    acc = group_frame(b, g1, 0).adjoint() * group_frame(b, b.groups[cyc[p - 1]], K) * acc;
    frames.back() = group_frame(b, g1, 0) * acc;

    orb.frames = gauge_fix(frames).frames;
    orb.lead_value = b.mu(g1[0], lead_node);
    out.orbits.push_back(std::move(orb));
  }
  std::stable_sort(out.orbits.begin(), out.orbits.end(),
                   [](const OrbitSamples& x, const OrbitSamples& y) { return x.lead_value > y.lead_value; });
  return out;
}

}  // namespace detail

namespace {

EvdResult assemble(const LaurentMatrix& a, const detail::EigenSamples& es, double truncation) {
  const int n = a.rows();
  const double T = 2.0 * kPi * es.den;
  EvdResult r;
  r.U = LaurentMatrix(n, n);
  r.D = LaurentMatrix(n, n);
  r.sigma.resize(n);
  r.alpha.resize(n);
  r.grid = es.K;
  int col = 0;
  for (const auto& orb : es.orbits) {
    const int p = orb.period;
    const int q = orb.q;
    const int den = p * es.den;
    const LaurentMatrix f = matrix_from_samples(orb.frames, den, es.theta_start, es.shift, truncation);
    // Judged against the whole spectrum: a zero branch is pure rounding noise.
    const FracLaurent raw = lp_from_samples_at(std::vector<cplx>(orb.mu.begin(), orb.mu.end()), den,
                                               es.theta_start, es.shift, truncation, es.branches.scale);
    const FracLaurent mu = scale(raw + lp_para_conj(raw), 0.5);
    for (int rr = 0; rr < q; ++rr) r.orbits.emplace_back();
    for (int k = 0; k < p; ++k) {
      const double delta = k * T;
      for (int rr = 0; rr < q; ++rr) {
        const int c = col + k * q + rr;
        for (int i = 0; i < n; ++i) r.U(i, c) = lp_shift(f(i, rr), delta);
        r.D(c, c) = lp_shift(mu, delta);
        r.sigma[c] = col + ((k + 1) % p) * q + rr;
        r.alpha[c] = p;
        r.orbits[r.orbits.size() - q + rr].push_back(c);
      }
    }
    col += p * q;
  }
  r.N = lcm_int(r.U.den(), r.D.den());
  r.residuals = evd_residuals(a, r.U, r.D);
  return r;
}

}  // namespace

EvdResult analytic_evd(const LaurentMatrix& a, const EvdOptions& opts) {
  if (!a.square() || a.rows() == 0) throw ShapeError("analytic_evd: need a non-empty square matrix");
  const double herm_tol = 1e-10 * std::max(1.0, a.max_coeff_abs());
  const auto ph = is_para_hermitian(a, herm_tol);
  if (!ph.ok) throw NotParaHermitian("analytic_evd: A != A^P (residual " + std::to_string(ph.residual) + ")");

  const int n = a.rows();
  long max_period = opts.max_period;
  if (max_period <= 0 && n <= 20) max_period = landau(n) * a.den();
  int K = opts.grid > 0 ? opts.grid : default_grid_size(a);
  if (K < 4) throw RangeError("analytic_evd: grid must have at least 4 nodes");

  std::exception_ptr last;
  for (;;) {
    std::optional<detail::EigenSamples> es;
    try {
      es = detail::sample_eigenstructure(a, K, opts.continuation);
    } catch (const ContinuationError&) {
      last = std::current_exception();
    } catch (const PeriodUndetected&) {
      last = std::current_exception();
    } catch (const GaugeError&) {
      last = std::current_exception();
    }
    if (es) {
      if (max_period > 0 && static_cast<long>(es->branches.L) * a.den() > max_period) {
        throw PeriodUndetected("eigenvalue period " + std::to_string(es->branches.L * a.den()) +
                               " exceeds max_period " + std::to_string(max_period));
      }
      try {
        EvdResult r = assemble(a, *es, opts.truncation);
        if (r.residuals.reconstruction <= opts.tol) return r;
        last = std::make_exception_ptr(ResidualError(
            "analytic_evd: reconstruction residual " + std::to_string(r.residuals.reconstruction) +
            " above tolerance " + std::to_string(opts.tol) + " at grid " + std::to_string(K)));
      } catch (const AliasError&) {
        last = std::current_exception();
      }
    }
    if (2L * K > opts.max_grid) std::rethrow_exception(last);
    K *= 2;
  }
}

}  // namespace pherm
