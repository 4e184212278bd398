#ifndef SUPERPOISSON_TESTS_SUPPORT_HPP
#define SUPERPOISSON_TESTS_SUPPORT_HPP

#include "superpoisson/cli.hpp"

#include <array>
#include <vector>

namespace sp_test {

using namespace superpoisson;
using GP = GradedPoly;

inline Variable V(VarKind k, std::size_t a) { return {k, static_cast<std::uint16_t>(a)}; }

inline ChartPtr R2() {
  static const ChartPtr c = make_chart({{"x1", Parity::Even}, {"x2", Parity::Even}});
  return c;
}
inline ChartPtr R3() {
  static const ChartPtr c = make_chart({{"x1", Parity::Even}, {"x2", Parity::Even}, {"x3", Parity::Even}});
  return c;
}
/// x1, x2 even; x3, x4 odd; one parameter lam.
inline ChartPtr R22() {
  static const ChartPtr c = make_chart(
      {{"x1", Parity::Even}, {"x2", Parity::Even}, {"x3", Parity::Odd}, {"x4", Parity::Odd}}, {"lam"});
  return c;
}

inline GP x(const ChartPtr& c, std::size_t a) { return GP::variable(c, V(VarKind::Base, a)); }
inline GP dx(const ChartPtr& c, std::size_t a) { return GP::variable(c, V(VarKind::Fiber, a)); }
inline GP xs(const ChartPtr& c, std::size_t a) { return GP::variable(c, V(VarKind::AntiFiber, a)); }
inline GP p(const ChartPtr& c, std::size_t a) { return GP::variable(c, V(VarKind::MomentumBase, a)); }
inline GP pi(const ChartPtr& c, std::size_t a) { return GP::variable(c, V(VarKind::MomentumFiber, a)); }
inline GP lam(const ChartPtr& c) { return GP::variable(c, V(VarKind::Param, 0)); }
inline GP num(const ChartPtr& c, const Rational& q) { return GP::constant(c, q); }
inline int par(const ChartPtr& c, std::size_t a) { return bit(c->coord_parity(a)); }
inline GP sgn(int e, const GP& u) { return (e & 1) ? -u : u; }

inline GP rnd(const ChartPtr& c, std::vector<VarKind> kinds, Parity p, std::uint64_t seed,
              std::uint32_t deg = 2, std::uint32_t terms = 5) {
  RandomPolySpec s;
  s.kinds = std::move(kinds);
  s.max_degree = deg;
  s.parity = p;
  s.max_terms = terms;
  return random_poly(c, s, seed);
}
/// Sum of three draws, so that small fixtures are rarely constant.
inline GP rnd3(const ChartPtr& c, std::vector<VarKind> kinds, Parity p, std::uint64_t seed, std::uint32_t terms) {
  GP u(c);
  for (std::uint64_t k = 0; k < 3; ++k) u += rnd(c, kinds, p, seed + 7919 * k, 2, terms);
  return u;
}
inline GP rnd_mult(const ChartPtr& c, Parity p, std::uint64_t seed, std::uint32_t terms = 5) {
  return rnd3(c, {VarKind::Base, VarKind::AntiFiber}, p, seed, terms);
}
inline GP rnd_fun(const ChartPtr& c, Parity p, std::uint64_t seed) {
  return rnd3(c, {VarKind::Base}, p, seed, 4);
}

using Mat4 = std::array<std::array<int, 4>, 4>;

/// Constant even symplectic form on R^{2|2}: omega_{ab}, with its inverse omega^{ab}
/// (omega_{ac} omega^{cb} = delta).
inline const Mat4& omega_lower() {
  static const Mat4 w{{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 2}}};
  return w;
}
inline const Mat4& omega_upper() {
  static const Mat4 w{{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 1}}};
  return w;
}

/// omega_2 = 1/2 dx^a dx^b omega_{ba}
inline GP omega2(const ChartPtr& c) {
  GP w(c);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (omega_lower()[b][a]) w += dx(c, a) * dx(c, b) * Rational(omega_lower()[b][a], 2);
    }
  }
  return w;
}

/// The odd potential of the shifted example.
inline GP chi(const ChartPtr& c) { return x(c, 2) + x(c, 3) * x(c, 1); }

/// 1/2 (-1)^{a+1} omega^{ab} (x*_b - s_b)(x*_a - s_a)
inline GP shifted_quadratic(const ChartPtr& c, const std::vector<GP>& s) {
  GP P(c);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const int w = omega_upper()[a][b];
      if (!w) continue;
      P += sgn(par(c, a) + 1, (xs(c, b) - s[b]) * (xs(c, a) - s[a])) * Rational(w, 2);
    }
  }
  return P;
}

inline std::vector<GP> gradient(const GP& f) {
  std::vector<GP> g;
  for (std::size_t a = 0; a < f.chart()->dim(); ++a) g.push_back(left_deriv(f, V(VarKind::Base, a)));
  return g;
}

/// Constant closed 1-form for the cubic instance (coefficients sit on the odd coordinates).
inline std::vector<Rational> omega1_coeffs() { return {0, 0, 3, 1}; }
inline GP omega1_const(const ChartPtr& c) {
  GP w(c);
  const auto k = omega1_coeffs();
  for (std::size_t a = 0; a < 4; ++a) {
    if (k[a] != 0) w += dx(c, a) * k[a];
  }
  return w;
}
/// Even cubic constant-coefficient form, multiplied by lam in the instance.
inline GP omega3(const ChartPtr& c) {
  return dx(c, 0) * dx(c, 1) * dx(c, 2) + dx(c, 2) * dx(c, 3) * dx(c, 3) * Rational(1, 2) +
         dx(c, 3) * dx(c, 3) * dx(c, 3) * Rational(1, 3);
}
inline GP cubic_omega(const ChartPtr& c) { return omega1_const(c) + omega2(c) + lam(c) * omega3(c); }

inline Truncation order1() {
  return Truncation{}.set(Grading::FiberDegree, 6).set(Grading::LambdaDegree, 1).set(Grading::BaseDegree, 4);
}

/// Quadratic in x* with x-dependent coefficients.
inline GP quadratic_P(const ChartPtr& c) {
  return (num(c, 1) + x(c, 2) * x(c, 3)) * xs(c, 1) * xs(c, 0) + x(c, 0) * xs(c, 2) * xs(c, 2) +
         x(c, 3) * xs(c, 0) * xs(c, 3);
}

/// quadratic_P plus a constant odd-block term, so the Hessian is invertible at the origin.
inline GP nondeg_quadratic_P(const ChartPtr& c) {
  return quadratic_P(c) + xs(c, 3) * xs(c, 3) * Rational(1, 2) - xs(c, 3) * xs(c, 2) + xs(c, 2) * xs(c, 2);
}

}  // namespace sp_test

#endif  // SUPERPOISSON_TESTS_SUPPORT_HPP
