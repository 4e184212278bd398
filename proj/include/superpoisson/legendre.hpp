#ifndef SUPERPOISSON_LEGENDRE_HPP
#define SUPERPOISSON_LEGENDRE_HPP

#include "superpoisson/graded_core.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace superpoisson {

class LegendreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FiberDirection : std::uint8_t {
  Phi,  // from P(x, x*): dx^a -> (-1)^{a+1} dP/dx*_a
  Psi,  // from w(x, dx): x*_a -> dw/d(dx^a)
};

struct FiberMap {
  FiberDirection direction = FiberDirection::Phi;
  GradedPoly source;
  SubstitutionMap map;

  /// The family being replaced (Fiber for phi, AntiFiber for psi).
  VarKind replaced() const noexcept {
    return direction == FiberDirection::Phi ? VarKind::Fiber : VarKind::AntiFiber;
  }
  /// The family the images are written in.
  VarKind image() const noexcept {
    return direction == FiberDirection::Phi ? VarKind::AntiFiber : VarKind::Fiber;
  }
};

FiberMap phi_map(const GradedPoly& P);
FiberMap psi_map(const GradedPoly& omega);

GradedPoly phi_pullback(const GradedPoly& P, const GradedPoly& u);
GradedPoly psi_pullback(const GradedPoly& omega, const GradedPoly& u);

struct HessianReport {
  bool nondegenerate = false;
  /// Second derivatives in the fiber variables at the zero section and base point.
  std::vector<std::vector<Rational>> matrix;
  std::string str() const;
};

/// Block (even-even, odd-odd) invertibility of the fiber Hessian of P(x, x*) or w(x, dx).
/// `base_point` gives values for the even coordinates (indexed by coordinate; odd entries
/// are ignored); missing entries are 0.
HessianReport hessian_nondegenerate(const GradedPoly& u, const std::vector<Rational>& base_point = {});

struct InversionResult {
  /// Assigns each image-family variable a function of the replaced family.
  SubstitutionMap inverse;
  Truncation truncation;
  /// m(h) - id on the replaced family, then h(m) - id on the image family.
  std::vector<GradedPoly> residuals;
  unsigned iterations = 0;

  bool exact() const;
  /// First nonzero residual component, or zero.
  GradedPoly residual() const;
};

/// Solves m(h) = id by fixed-point iteration around the constant linear part.
/// Throws LegendreError on a singular linear part or when the iteration does not settle.
InversionResult invert_fiber_map(const FiberMap& m, const Truncation& t = Truncation::defaults());

/// w = (phi_P^*)^{-1}(E(P) - P).
GradedPoly legendre_transform(const GradedPoly& P, const Truncation& t = Truncation::defaults());
/// P = (psi_w^*)^{-1}(E(w) - w).
GradedPoly legendre_inverse(const GradedPoly& omega, const Truncation& t = Truncation::defaults());
/// w' = (phi_P^*)^{-1}(P).
GradedPoly omega_prime(const GradedPoly& P, const Truncation& t = Truncation::defaults());

/// (phi_P^*)^{-1} applied to an arbitrary function of (x, x*).
GradedPoly phi_inverse_pullback(const GradedPoly& P, const GradedPoly& u,
                                const Truncation& t = Truncation::defaults());

}  // namespace superpoisson

#endif  // SUPERPOISSON_LEGENDRE_HPP
