#ifndef SUPERPOISSON_VERIFY_HPP
#define SUPERPOISSON_VERIFY_HPP

#include "superpoisson/brackets.hpp"
#include "superpoisson/koszul.hpp"
#include "superpoisson/legendre.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superpoisson {

struct BracketReport {
  std::string name;
  std::string chart;
  std::vector<std::string> inputs;
  /// First nonzero residual encountered, or zero.
  GradedPoly residual;
  std::optional<Truncation> truncation;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  explicit BracketReport(std::string name, const ChartPtr& chart);

  /// Records one case; the report fails on the first nonzero residual.
  void record(const GradedPoly& r);
  void merge(const BracketReport& other);

  /// `CHECK <name> <chart> PASS|FAIL residual=<poly>`
  std::string line() const;
  /// One JSON object on a single line.
  std::string json() const;
};

/// All monomials in x, dx with FiberDegree <= max_fiber and BaseDegree <= max_base.
std::vector<GradedPoly> monomial_forms(const ChartPtr& chart, unsigned max_fiber = 2, unsigned max_base = 2);
/// Parity-homogeneous functions: the coordinates plus `random_count` seeded random ones.
std::vector<GradedPoly> test_functions(const ChartPtr& chart, unsigned random_count = 2, std::uint64_t seed = 7);

/// phi_P^* d - d_P phi_P^* + 1/2 phi_P^* kappa_{[P,P]} on each form.
BracketReport check_discrepancy(const GradedPoly& P, const std::vector<GradedPoly>& forms,
                                const SignConvention& conv = calibrated_convention());
BracketReport check_discrepancy(const GradedPoly& P);

/// d(w) + 1/2 (phi_P^*)^{-1}[P,P] for w = legendre_transform(P, t).
BracketReport check_domega(const GradedPoly& P, const Truncation& t = Truncation::defaults(),
                           const SignConvention& conv = calibrated_convention());

/// [...[[P,P],f_1],...,f_n]|_M for all n <= N over the functions, plus adjacent-transposition
/// antisymmetry of the higher brackets. Residuals are truncated at `t`.
BracketReport check_linfty(const GradedPoly& P, unsigned N, const std::vector<GradedPoly>& functions,
                           const Truncation& t = Truncation::none(),
                           const SignConvention& conv = calibrated_convention());
BracketReport check_linfty(const GradedPoly& P, unsigned N, const Truncation& t = Truncation::none());

/// Classical relations (quadratic P only), epsilon formulas up to arity N, the alpha morphism
/// identity on the samples, and (K,K) = 0 when [P,P] = 0.
BracketReport check_koszul_suite(const GradedPoly& P, const std::vector<GradedPoly>& samples,
                                 const std::vector<GradedPoly>& functions, unsigned N,
                                 const SignConvention& conv = calibrated_convention());
BracketReport check_koszul_suite(const GradedPoly& P, unsigned N = 3);

/// E([P,Q]) = [E P, Q] + [P, E Q] - [P,Q] and [P, E(P) - P] = 1/2 (E[P,P] - [P,P]).
BracketReport check_weight_identities(const GradedPoly& P, const GradedPoly& Q,
                                      const SignConvention& conv = calibrated_convention());

/// P^{ab} with phi_P^*(dx^a) = P^{ab} x*_b, read off a quadratic P.
std::vector<std::vector<GradedPoly>> raised_tensor(const GradedPoly& P);

}  // namespace superpoisson

#endif  // SUPERPOISSON_VERIFY_HPP
