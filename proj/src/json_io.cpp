#include "pherm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pherm/error.hpp"

namespace pherm {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_integer()) throw ParseError(std::string(what) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + ": expected a number");
  return v.get<double>();
}

void write(std::string& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write(out, it.value());
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(out, j[i]);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "complex"), number(j[1], "complex")};
  if (j.is_object()) {
    const double re = j.contains("re") ? number(j.at("re"), "complex") : 0.0;
    const double im = j.contains("im") ? number(j.at("im"), "complex") : 0.0;
    return {re, im};
  }
  throw ParseError("complex: expected a number, [re, im] or {\"re\", \"im\"}");
}

json to_json(const FracLaurent& f) {
  json terms = json::array();
  for (int k = f.lo(); k <= f.hi(); ++k) {
    const cplx c = f.coeff(k);
    if (c == cplx{0.0, 0.0}) continue;
    terms.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"den", f.den()}, {"terms", terms}};
}

FracLaurent laurent_from_json(const json& j) {
  if (j.is_number()) return FracLaurent::constant(j.get<double>());
  const int den = int_field(j, "den", "coefficient");
  if (den < 1) throw ParseError("coefficient: \"den\" must be >= 1");
  const json& terms = field(j, "terms", "coefficient");
  if (!terms.is_array()) throw ParseError("coefficient: \"terms\" must be an array");
  if (terms.empty()) return FracLaurent();
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& t : terms) {
    const int k = int_field(t, "k", "term");
    lo = first ? k : std::min(lo, k);
    hi = first ? k : std::max(hi, k);
    first = false;
  }
  if (static_cast<long>(hi) - lo > (1 << 22)) throw ParseError("coefficient: exponent range too large");
  std::vector<cplx> c(hi - lo + 1, cplx{0.0, 0.0});
  for (const auto& t : terms) {
    const double re = t.contains("re") ? number(t.at("re"), "term") : 0.0;
    const double im = t.contains("im") ? number(t.at("im"), "term") : 0.0;
    c[t.at("k").get<int>() - lo] += cplx{re, im};
  }
  return FracLaurent(den, lo, std::move(c));
}

json to_json(const LaurentMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(row);
  }
  return {{"m", a.rows()}, {"n", a.cols()}, {"entries", rows}};
}

LaurentMatrix matrix_from_json(const json& j) {
  const int m = int_field(j, "m", "matrix");
  const int n = int_field(j, "n", "matrix");
  if (m < 1 || n < 1) throw ParseError("matrix: \"m\" and \"n\" must be positive");
  const json& e = field(j, "entries", "matrix");
  if (!e.is_array() || static_cast<int>(e.size()) != m) throw ParseError("matrix: \"entries\" must have m rows");
  LaurentMatrix a(m, n);
  for (int i = 0; i < m; ++i) {
    if (!e[i].is_array() || static_cast<int>(e[i].size()) != n) {
      throw ParseError("matrix: row " + std::to_string(i) + " must have n entries");
    }
    for (int k = 0; k < n; ++k) a(i, k) = laurent_from_json(e[i][k]);
  }
  return a;
}

json to_json(const PalindromicPoly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs) {
    json rows = json::array();
    for (int i = 0; i < c.rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < c.cols(); ++k) row.push_back(to_json(c(i, k)));
      rows.push_back(row);
    }
    coeffs.push_back(rows);
  }
  return {{"grade", p.grade}, {"coeffs", coeffs}};
}

PalindromicPoly poly_from_json(const json& j) {
  PalindromicPoly p;
  p.grade = int_field(j, "grade", "polynomial");
  if (p.grade < 0) throw ParseError("polynomial: \"grade\" must be >= 0");
  const json& cs = field(j, "coeffs", "polynomial");
  if (!cs.is_array() || static_cast<int>(cs.size()) != p.grade + 1) {
    throw ParseError("polynomial: \"coeffs\" must hold grade + 1 matrices");
  }
  for (const auto& c : cs) {
    if (!c.is_array() || c.empty()) throw ParseError("polynomial: coefficient must be a non-empty array of rows");
    const int n = static_cast<int>(c.size());
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      if (!c[i].is_array() || static_cast<int>(c[i].size()) != n) {
        throw ParseError("polynomial: coefficients must be square");
      }
      for (int k = 0; k < n; ++k) m(i, k) = complex_from_json(c[i][k]);
    }
    p.coeffs.push_back(m);
  }
  return p;
}

json to_json(const Residuals& r, int N) {
  return {{"reconstruction", r.reconstruction},
          {"para_unitarity", r.para_unitarity},
          {"realness", r.realness},
          {"N", N}};
}

json to_json(const EvdResult& r) {
  return {{"U", to_json(r.U)},         {"D", to_json(r.D)},         {"N", r.N},
          {"sigma", r.sigma},          {"orbits", r.orbits},        {"alpha", r.alpha},
          {"grid", r.grid},            {"residuals", to_json(r.residuals, r.N)}};
}

json to_json(const PseudoCircResult& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json phis = json::array();
    for (const auto& f : b.phis) phis.push_back(to_json(f));
    blocks.push_back({{"size", b.M}, {"phis", phis}});
  }
  return {{"W", to_json(r.W)},
          {"C", to_json(r.C)},
          {"blocks", blocks},
          {"grid", r.grid},
          {"residuals", to_json(r.residuals, 1)}};
}

json to_json(const SvdResult& r) {
  return {{"U", to_json(r.U)}, {"S", to_json(r.S)}, {"V", to_json(r.V)},
          {"N", r.N},          {"rank", r.rank},    {"grid", r.grid},
          {"residuals", to_json(r.residuals, r.N)}};
}

json to_json(const SignReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"m", e.m}, {"eps", e.eps}, {"c", e.c}, {"feature", e.feature}});
  return {{"lambda", to_json(r.lambda)}, {"theta0", r.theta0}, {"entries", entries}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const json& j) {
  std::string out;
  write(out, j);
  out += '\n';
  return out;
}

}  // namespace pherm
