#include "superpoisson/brackets.hpp"

#include <sstream>

namespace superpoisson {

namespace {

std::string table_str(SignFn f) {
  std::ostringstream os;
  os << "[";
  for (int p = 0; p < 2; ++p) {
    for (int a = 0; a < 2; ++a) os << f(static_cast<Parity>(p), static_cast<Parity>(a));
  }
  os << "]";
  return os.str();
}

void require_only(const GradedPoly& u, const std::vector<VarKind>& kinds, const char* what) {
  if (!depends_only_on(u, kinds)) throw BracketError(std::string(what));
}

Parity coord_parity(const Chart& chart, std::size_t a) { return chart.coord_parity(a); }

Variable var(VarKind k, std::size_t a) { return {k, static_cast<std::uint16_t>(a)}; }

// Bracket of a parity-homogeneous left argument.
GradedPoly schouten_homogeneous(const GradedPoly& P, Parity p, const GradedPoly& Q,
                                const SignConvention& conv) {
  const Chart& chart = *P.chart();
  GradedPoly out(P.chart());
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    const Parity pa = coord_parity(chart, a);
    const Variable x = var(VarKind::Base, a);
    const Variable xs = var(VarKind::AntiFiber, a);
    const GradedPoly dP_xs = left_deriv(P, xs);
    if (!dP_xs.is_zero()) {
      GradedPoly t = dP_xs * left_deriv(Q, x);
      out += conv.schouten_s1(p, pa) ? -t : t;
    }
    const GradedPoly dP_x = left_deriv(P, x);
    if (!dP_x.is_zero()) {
      GradedPoly t = dP_x * left_deriv(Q, xs);
      out += conv.schouten_s2(p, pa) ? -t : t;
    }
  }
  return out;
}

GradedPoly poisson_homogeneous(const GradedPoly& F, Parity f, const GradedPoly& G,
                               const SignConvention& conv) {
  const Chart& chart = *F.chart();
  GradedPoly out(F.chart());
  auto pair = [&](Variable z, Variable w, Parity pz) {
    const GradedPoly dF_w = left_deriv(F, w);
    if (!dF_w.is_zero()) {
      GradedPoly t = dF_w * left_deriv(G, z);
      out += conv.poisson_t1(f, pz) ? -t : t;
    }
    const GradedPoly dF_z = left_deriv(F, z);
    if (!dF_z.is_zero()) {
      GradedPoly t = dF_z * left_deriv(G, w);
      out += conv.poisson_t2(f, pz) ? -t : t;
    }
  };
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    const Parity pa = coord_parity(chart, a);
    pair(var(VarKind::Base, a), var(VarKind::MomentumBase, a), pa);
    pair(var(VarKind::Fiber, a), var(VarKind::MomentumFiber, a), flip(pa));
  }
  return out;
}

}  // namespace

std::string SignConvention::str() const {
  return "s1=" + table_str(schouten_s1) + " s2=" + table_str(schouten_s2) +
         " t1=" + table_str(poisson_t1) + " t2=" + table_str(poisson_t2);
}

const SignConvention& calibrated_convention() noexcept {
  static const SignConvention conv{
      SignFn::poly(1, 0, 1, 1),  // (P+1)(a+1) + P
      SignFn::poly(1, 1, 1, 1),  // (P+1)(a+1)
      SignFn::poly(0, 0, 1, 1),  // A(F+1)
      SignFn::poly(1, 0, 0, 1),  // AF + 1
  };
  return conv;
}

GradedPoly schouten(const GradedPoly& P, const GradedPoly& Q, const SignConvention& conv) {
  static const std::vector<VarKind> kinds{VarKind::Base, VarKind::AntiFiber};
  require_only(P, kinds, "schouten: arguments must be functions of x and x*");
  require_only(Q, kinds, "schouten: arguments must be functions of x and x*");
  if (!same_chart(P.chart(), Q.chart())) throw ChartError("schouten: chart mismatch");
  GradedPoly out = schouten_homogeneous(P.even_part(), Parity::Even, Q, conv);
  out += schouten_homogeneous(P.odd_part(), Parity::Odd, Q, conv);
  return out;
}

GradedPoly canonical_poisson(const GradedPoly& F, const GradedPoly& G, const SignConvention& conv) {
  static const std::vector<VarKind> kinds{VarKind::Base, VarKind::Fiber, VarKind::MomentumBase,
                                          VarKind::MomentumFiber};
  require_only(F, kinds, "canonical_poisson: arguments must be functions of x, dx, p, pi");
  require_only(G, kinds, "canonical_poisson: arguments must be functions of x, dx, p, pi");
  if (!same_chart(F.chart(), G.chart())) throw ChartError("canonical_poisson: chart mismatch");
  GradedPoly out = poisson_homogeneous(F.even_part(), Parity::Even, G, conv);
  out += poisson_homogeneous(F.odd_part(), Parity::Odd, G, conv);
  return out;
}

GradedPoly de_rham(const GradedPoly& omega) {
  require_only(omega, {VarKind::Base, VarKind::Fiber}, "de_rham: argument must be a function of x and dx");
  const Chart& chart = *omega.chart();
  GradedPoly out(omega.chart());
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    const GradedPoly dw = left_deriv(omega, var(VarKind::Base, a));
    if (!dw.is_zero()) out += GradedPoly::variable(omega.chart(), var(VarKind::Fiber, a)) * dw;
  }
  return out;
}

GradedPoly lichnerowicz(const GradedPoly& P, const GradedPoly& Q, const SignConvention& conv) {
  return schouten(P, Q, conv);
}

GradedPoly kappa(const GradedPoly& Q, const GradedPoly& omega) {
  require_only(Q, {VarKind::Base, VarKind::AntiFiber}, "kappa: Q must be a function of x and x*");
  require_only(omega, {VarKind::Base, VarKind::Fiber}, "kappa: omega must be a function of x and dx");
  const auto q = Q.parity();
  if (!q) throw BracketError("kappa: Q must be parity-homogeneous");
  const Chart& chart = *Q.chart();
  GradedPoly out(Q.chart());
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    const GradedPoly dw = left_deriv(omega, var(VarKind::Fiber, a));
    if (dw.is_zero()) continue;
    GradedPoly t = left_deriv(Q, var(VarKind::AntiFiber, a)) * dw;
    const bool negative = bit(flip(*q)) && bit(flip(coord_parity(chart, a)));
    out += negative ? -t : t;
  }
  return out;
}

GradedPoly higher_poisson(const HigherBracketRequest& req, const SignConvention& conv) {
  const auto p = req.P.parity();
  if (!p || *p != Parity::Even) throw BracketError("higher_poisson: P must be even");
  GradedPoly acc = req.P;
  for (const auto& f : req.args) {
    if (!depends_only_on(f, {VarKind::Base})) {
      throw BracketError("higher_poisson: arguments must be functions on the base");
    }
    if (!f.parity()) throw BracketError("higher_poisson: arguments must be parity-homogeneous");
    acc = schouten(acc, f, conv);
  }
  return restrict_to(acc, {VarKind::AntiFiber});
}

GradedPoly higher_poisson(const GradedPoly& P, const std::vector<GradedPoly>& args,
                          const SignConvention& conv) {
  return higher_poisson(HigherBracketRequest{P, args}, conv);
}

GradedPoly restrict(const GradedPoly& u, const std::vector<VarKind>& zero_kinds) {
  return restrict_to(u, zero_kinds);
}

}  // namespace superpoisson
