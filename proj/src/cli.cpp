#include "pherm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pherm/error.hpp"
#include "pherm/json_io.hpp"

namespace pherm {

namespace {

constexpr int kCurveNodes = 512;

// Carries a structure report along with the failure so `check` can print it.
struct CheckFailed {
  json report;
  std::string kind;
  std::string message;
};

void validate(const RunConfig& c) {
  static const char* commands[] = {"check", "evd", "pseudocirc", "svd", "signchar", "perturb"};
  if (std::find(std::begin(commands), std::end(commands), c.command) == std::end(commands)) {
    throw RangeError("unknown command '" + c.command + "'");
  }
  if (c.input.empty()) throw RangeError("no input file");
  if (c.grid != 0 && (c.grid < 4 || !is_power_of_two(c.grid))) throw RangeError("--grid must be a power of two >= 4");
  if (!(c.tol > 0.0 && c.tol <= 1e-2)) throw RangeError("--tol must lie in (0, 1e-2]");
  if (c.max_period < 0) throw RangeError("--max-period must be >= 1");
  if (c.command == "perturb" && c.delta.empty()) throw RangeError("perturb needs --delta");
  if (!c.csv.empty() && c.command != "evd" && c.command != "svd") {
    throw RangeError("--csv is only available for evd and svd");
  }
  if (c.abs_singular_values && (c.command != "svd" || c.csv.empty())) {
    throw RangeError("--abs-singular-values applies to svd with --csv");
  }
  if (c.branch_angle && c.command != "signchar" && c.command != "perturb") {
    throw RangeError("--branch-angle applies to signchar and perturb");
  }
}

EvdOptions evd_options(const RunConfig& c) {
  EvdOptions o;
  o.grid = c.grid;
  o.tol = c.tol;
  o.max_period = c.max_period;
  return o;
}

double tau_of(const RunConfig& c) { return c.branch_angle.value_or(kPi); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RangeError("cannot write " + path);
  f << text;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// theta, branch_index, value over one full period of the diagonal functions.
std::string diagonal_csv(const LaurentMatrix& d, int period_den, const char* column) {
  std::string out = std::string("theta,branch_index,") + column + "\n";
  const auto thetas = grid_nodes(kCurveNodes, period_den);
  const int r = std::min(d.rows(), d.cols());
  for (double t : thetas)
    for (int i = 0; i < r; ++i) out += fmt(t) + "," + std::to_string(i) + "," + fmt(lp_eval(d(i, i), t).real()) + "\n";
  return out;
}

std::string abs_singular_csv(const LaurentMatrix& a, int period_den) {
  std::string out = "theta,branch_index,sigma\n";
  const auto thetas = grid_nodes(kCurveNodes, period_den);
  const auto sv = pointwise_singular_values(a, thetas);
  for (std::size_t j = 0; j < thetas.size(); ++j)
    for (int i = 0; i < sv[j].size(); ++i) out += fmt(thetas[j]) + "," + std::to_string(i) + "," + fmt(sv[j](i)) + "\n";
  return out;
}

json run_check(const json& in) {
  if (in.contains("grade")) {
    const PalindromicPoly p = poly_from_json(in);
    double dev = 0.0;
    bool shape_ok = true;
    try {
      p.validate();
    } catch (const ShapeError&) {
      shape_ok = false;
    } catch (const NotPalindromic&) {
    }
    if (shape_ok)
      for (int i = 0; i <= p.grade; ++i) dev = std::max(dev, (p.coeffs[i] - p.coeffs[p.grade - i].adjoint()).norm());
    const bool ok = shape_ok && dev <= 1e-12 * std::max(1.0, p.norm());
    json report = {{"kind", "polynomial"}, {"grade", p.grade}, {"n", p.size()}, {"palindromic", ok}, {"residual", dev}};
    if (!shape_ok) throw CheckFailed{report, "ShapeError", "coefficients are not square of equal size"};
    if (!ok) throw CheckFailed{report, "NotPalindromic", "P_i != P_{g-i}^*"};
    return report;
  }
  const LaurentMatrix a = matrix_from_json(in);
  json report = {{"kind", "matrix"}, {"m", a.rows()}, {"n", a.cols()}, {"den", a.den()}, {"bandwidth", a.bandwidth()}};
  if (!a.square()) {
    report["para_hermitian"] = false;
    throw CheckFailed{report, "ShapeError", "matrix is not square"};
  }
  const StructureCheck s = is_para_hermitian(a);
  report["para_hermitian"] = s.ok;
  report["residual"] = s.residual;
  if (!s.ok) throw CheckFailed{report, "NotParaHermitian", "A - A^P has coefficients up to " + fmt(s.residual)};
  return report;
}

json run_signchar(const RunConfig& c, const PalindromicPoly& p) {
  const double tau = tau_of(c);
  const UnimodularSpectrum spec = unimodular_eigenvalues(p, 1e-6, tau);
  SignOptions opts;
  opts.tau = tau;
  opts.evd = evd_options(c);
  json eigs = json::array();
  for (const auto& e : spec.eigenvalues) {
    json rep = to_json(sign_characteristics(p, e.lambda, opts));
    rep["multiplicity"] = e.multiplicity;
    if (e.multiplicity == 1) {
      rep["sign_simple"] = sign_simple(p, e.lambda, null_vector(p, e.lambda), tau).value;
    }
    eigs.push_back(rep);
  }
  return {{"grade", p.grade},
          {"n", p.size()},
          {"branch_angle", tau},
          {"branch_point_multiplicity", spec.branch_point_multiplicity},
          {"eigenvalues", eigs}};
}

json run_perturb(const RunConfig& c, const PalindromicPoly& p) {
  PalindromicPoly dp = poly_from_json(read_json_file(c.delta));
  dp.validate();
  if (dp.grade != p.grade || dp.size() != p.size()) throw ShapeError("--delta must have the same grade and size");
  const UnimodularSpectrum spec = unimodular_eigenvalues(p, 1e-6, tau_of(c));
  json clusters = json::array();
  const auto reports = perturbation_track(p, dp, spec, c.tol);
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const UnimodularEigenvalue& e = spec.eigenvalues[k];
    const PerturbationReport& r = reports[k];
    json moved = json::array();
    for (cplx z : r.new_eigenvalues) moved.push_back(to_json(z));
    clusters.push_back({{"lambda", to_json(e.lambda)},
                        {"multiplicity", e.multiplicity},
                        {"moved_off_circle", r.moved_off_circle},
                        {"max_radial_deviation", r.max_radial_deviation},
                        {"new_eigenvalues", moved}});
  }
  return {{"clusters", clusters}};
}

json dispatch(const RunConfig& c) {
  const json in = read_json_file(c.input);
  if (c.command == "check") return run_check(in);
  if (c.command == "signchar" || c.command == "perturb") {
    const PalindromicPoly p = poly_from_json(in);
    p.validate();
    return c.command == "signchar" ? run_signchar(c, p) : run_perturb(c, p);
  }
  const LaurentMatrix a = matrix_from_json(in);
  if (c.command == "evd") {
    const EvdResult r = analytic_evd(a, evd_options(c));
    if (!c.csv.empty()) write_file(c.csv, diagonal_csv(r.D, r.N, "mu"));
    return to_json(r);
  }
  if (c.command == "pseudocirc") return to_json(pseudo_circulant_decomposition(a, evd_options(c)));
  const SvdResult r = analytic_svd(a, evd_options(c));
  if (!c.csv.empty()) {
    write_file(c.csv, c.abs_singular_values ? abs_singular_csv(a, r.N) : diagonal_csv(r.S, r.N, "sigma"));
  }
  return to_json(r);
}

int report_error(std::ostream& err, const std::string& kind, ErrorClass cls, const std::string& message,
                 const json& extra = json()) {
  json e = {{"error", kind},
            {"class", cls == ErrorClass::Validation ? "validation" : "numerical"},
            {"message", message}};
  if (!extra.is_null()) e["report"] = extra;
  err << dump(e);
  return cls == ErrorClass::Validation ? 1 : 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const std::string text = dump(dispatch(config));
    if (config.out.empty()) {
      out << text;
    } else {
      write_file(config.out, text);
    }
    return 0;
  } catch (const CheckFailed& f) {
    if (config.out.empty()) {
      out << dump(f.report);
    } else {
      write_file(config.out, dump(f.report));
    }
    return report_error(err, f.kind, ErrorClass::Validation, f.message, f.report);
  } catch (const Error& e) {
    return report_error(err, e.kind(), e.error_class(), e.what());
  } catch (const std::exception& e) {
    return report_error(err, "InternalError", ErrorClass::Numerical, e.what());
  }
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analytic decompositions of para-Hermitian matrix functions on the unit circle"};
  app.require_subcommand(1);
  RunConfig c;
  double angle = kPi;
  const char* about[][2] = {
      {"check", "validate a matrix (para-Hermitian) or polynomial (palindromic) file"},
      {"evd", "analytic eigendecomposition A = U D U^P"},
      {"pseudocirc", "pseudo-circulant block diagonalization A = W C W^P"},
      {"svd", "analytic singular value decomposition A = U S V^P"},
      {"signchar", "sign characteristics of the unimodular eigenvalues of a palindromic polynomial"},
      {"perturb", "track unimodular eigenvalues under a palindromic perturbation"},
  };
  for (const auto& a : about) {
    CLI::App* sub = app.add_subcommand(a[0], a[1]);
    sub->add_option("input", c.input, "input JSON file")->required();
    sub->add_option("--grid", c.grid, "nodes per base period (power of two)");
    sub->add_option("--tol", c.tol, "residual tolerance");
    sub->add_option("--max-period", c.max_period, "upper bound on the denominator N");
    sub->add_option("--branch-angle", angle, "square-root branch line angle tau");
    sub->add_flag("--abs-singular-values", c.abs_singular_values, "CSV holds pointwise |S| (classical values)");
    sub->add_option("--out", c.out, "result JSON path (default stdout)");
    sub->add_option("--csv", c.csv, "curve CSV path");
    sub->add_option("--delta", c.delta, "perturbation polynomial file");
    sub->callback([&c, sub, &angle] {
      c.command = sub->get_name();
      if (sub->count("--branch-angle") > 0) c.branch_angle = angle;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "ParseError", ErrorClass::Validation, e.what());
  }
  return run(c, out, err);
}

}  // namespace pherm
