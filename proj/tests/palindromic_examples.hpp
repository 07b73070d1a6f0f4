#pragma once

#include <complex>

#include "pherm/palindromic.hpp"

namespace examples {

using cplx = std::complex<double>;
inline const cplx I{0.0, 1.0};

inline pherm::PalindromicPoly pencil(const Eigen::MatrixXcd& a) {
  // A z + A^*
  pherm::PalindromicPoly p;
  p.grade = 1;
  p.coeffs = {a.adjoint(), a};
  return p;
}

// [[2z, 1 + z], [z^2 + z, 2z]] = z R(z)
inline pherm::PalindromicPoly quadratic() {
  pherm::PalindromicPoly p;
  p.grade = 2;
  Eigen::MatrixXcd p0(2, 2), p1(2, 2), p2(2, 2);
  p0 << 0, 1, 0, 0;
  p1 << 2, 1, 1, 2;
  p2 << 0, 0, 1, 0;
  p.coeffs = {p0, p1, p2};
  return p;
}

// P_0 = [[2, 1 - i], [1, i]], P_1 = P_0^*
inline pherm::PalindromicPoly pencil_two_eigs() {
  pherm::PalindromicPoly p;
  p.grade = 1;
  Eigen::MatrixXcd p0(2, 2), p1(2, 2);
  p0 << 2, 1.0 - I, 1, I;
  p1 << 2, 1, 1.0 + I, -I;
  p.coeffs = {p0, p1};
  return p;
}

inline Eigen::MatrixXcd a_eps(double e) {
  Eigen::MatrixXcd a(2, 2);
  a << 1, I, I, e * e;
  return a;
}

inline Eigen::MatrixXcd b_eps(double e) {
  Eigen::MatrixXcd b(2, 2);
  b << I, e, e, I;
  return b;
}

inline cplx lambda1(double e) { return (1.0 + I * e) * (1.0 + I * e) / (1.0 + e * e); }

}  // namespace examples
