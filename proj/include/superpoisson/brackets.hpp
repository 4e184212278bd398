#ifndef SUPERPOISSON_BRACKETS_HPP
#define SUPERPOISSON_BRACKETS_HPP

#include "superpoisson/graded_core.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace superpoisson {

class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Z2-valued function of (parity of the left bracket argument, parity of the coordinate),
/// stored as a truth table: bit (2*p + a).
struct SignFn {
  std::uint8_t table = 0;

  constexpr int operator()(Parity p, Parity a) const noexcept {
    return (table >> (2 * bit(p) + bit(a))) & 1;
  }
  /// c0 + cp*p + ca*a + cpa*p*a (mod 2).
  static constexpr SignFn poly(int c0, int cp, int ca, int cpa) noexcept {
    std::uint8_t t = 0;
    for (int p = 0; p < 2; ++p) {
      for (int a = 0; a < 2; ++a) {
        if ((c0 + cp * p + ca * a + cpa * p * a) % 2) t |= static_cast<std::uint8_t>(1u << (2 * p + a));
      }
    }
    return SignFn{t};
  }
  bool operator==(const SignFn&) const = default;
};

/// Coordinate sign conventions for the two canonical brackets:
///
///   [P,Q] = sum_a (-1)^{s1(P,a)} dP/dx*_a dQ/dx^a + (-1)^{s2(P,a)} dP/dx^a dQ/dx*_a
///   (F,G) = sum_A (-1)^{t1(F,A)} dF/dw_A dG/dz^A + (-1)^{t2(F,A)} dF/dz^A dG/dw_A
///
/// where (z^A, w_A) runs over (x^a, p_a) and (dx^a, pi_a), all derivatives are left
/// derivatives, and A is the parity of z^A.
struct SignConvention {
  SignFn schouten_s1;
  SignFn schouten_s2;
  SignFn poisson_t1;
  SignFn poisson_t2;

  bool operator==(const SignConvention&) const = default;
  std::string str() const;
};

/// The frozen convention. See tests/test_calibration.cpp for the search that selects it.
///   s1 = (P+1)(a+1) + P,  s2 = (P+1)(a+1),  t1 = A(F+1),  t2 = AF + 1
/// With it [P,Q] = (-1)^{PQ}[Q,P] and (F,G) = -(-1)^{FG}(G,F).
const SignConvention& calibrated_convention() noexcept;

/// Canonical odd bracket on functions of (x, x*).
GradedPoly schouten(const GradedPoly& P, const GradedPoly& Q,
                    const SignConvention& conv = calibrated_convention());

/// Canonical even bracket on functions of (x, dx, p, pi).
GradedPoly canonical_poisson(const GradedPoly& F, const GradedPoly& G,
                             const SignConvention& conv = calibrated_convention());

/// d = sum_a dx^a d/dx^a on functions of (x, dx).
GradedPoly de_rham(const GradedPoly& omega);

/// d_P(Q) = [P, Q].
GradedPoly lichnerowicz(const GradedPoly& P, const GradedPoly& Q,
                        const SignConvention& conv = calibrated_convention());

/// kappa_Q(omega) = sum_a (-1)^{(Q+1)(a+1)} dQ/dx*_a d(omega)/d(dx^a); result in (x, dx, x*).
GradedPoly kappa(const GradedPoly& Q, const GradedPoly& omega);

struct HigherBracketRequest {
  GradedPoly P;
  std::vector<GradedPoly> args;
};

/// {f_1,...,f_n}_P = [...[P,f_1],...,f_n] restricted to x* = 0.
GradedPoly higher_poisson(const HigherBracketRequest& req,
                          const SignConvention& conv = calibrated_convention());
GradedPoly higher_poisson(const GradedPoly& P, const std::vector<GradedPoly>& args,
                          const SignConvention& conv = calibrated_convention());

/// Sets all variables of the listed kinds to zero.
GradedPoly restrict(const GradedPoly& u, const std::vector<VarKind>& zero_kinds);

}  // namespace superpoisson

#endif  // SUPERPOISSON_BRACKETS_HPP
