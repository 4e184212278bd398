#ifndef SUPERPOISSON_KOSZUL_HPP
#define SUPERPOISSON_KOSZUL_HPP

#include "superpoisson/brackets.hpp"

#include <vector>

namespace superpoisson {

struct OddHamiltonian {
  GradedPoly K;
  GradedPoly source;
};

/// K = sum_a (-1)^a dP/dx*_a(x, pi) p_a + dx^a dP/dx^a(x, pi) for even P.
/// For odd P: K = -sum_a dP/dx*_a(x, pi) p_a - dx^a dP/dx^a(x, pi), so that
/// alpha([P,Q]) = (-1)^{P+1} (alpha P, alpha Q) for all parities.
OddHamiltonian alpha(const GradedPoly& P);

/// [w_1, ..., w_n]_P = (...(K, w_1), ..., w_n) at p = pi = 0.
GradedPoly higher_koszul(const OddHamiltonian& K, const std::vector<GradedPoly>& forms,
                         const SignConvention& conv = calibrated_convention());
GradedPoly higher_koszul(const GradedPoly& P, const std::vector<GradedPoly>& forms,
                         const SignConvention& conv = calibrated_convention());

enum class ArgPattern : std::uint8_t {
  Functions,       // [f_1, ..., f_n]
  FirstFunction,   // [f_1, df_2, ..., df_n]
  Differentials,   // [df_1, ..., df_n]
};

struct KoszulComparison {
  GradedPoly lhs;
  GradedPoly rhs;
  GradedPoly difference;
  int epsilon = 0;
};

/// (n-1) f_1 + (n-2) f_2 + ... + f_{n-1} + n, mod 2.
int koszul_epsilon(const std::vector<Parity>& parities);

/// Computes the bracket directly and via the higher Poisson brackets.
KoszulComparison koszul_on_differentials(const GradedPoly& P, const std::vector<GradedPoly>& functions,
                                         ArgPattern pattern,
                                         const SignConvention& conv = calibrated_convention());

}  // namespace superpoisson

#endif  // SUPERPOISSON_KOSZUL_HPP
