#include "superpoisson/koszul.hpp"

namespace superpoisson {

namespace {

Variable var(VarKind k, std::size_t a) { return {k, static_cast<std::uint16_t>(a)}; }

GradedPoly alpha_homogeneous(const GradedPoly& P, Parity p) {
  const ChartPtr& chart = P.chart();
  SubstitutionMap to_pi(chart);
  for (std::size_t a = 0; a < chart->dim(); ++a) {
    to_pi.assign(var(VarKind::AntiFiber, a), GradedPoly::variable(chart, var(VarKind::MomentumFiber, a)));
  }
  GradedPoly K(chart);
  for (std::size_t a = 0; a < chart->dim(); ++a) {
    const GradedPoly dxs = left_deriv(P, var(VarKind::AntiFiber, a));
    if (!dxs.is_zero()) {
      GradedPoly t = substitute(dxs, to_pi) * GradedPoly::variable(chart, var(VarKind::MomentumBase, a));
      const bool odd_coord = chart->coord_parity(a) == Parity::Odd;
      const bool negative = p == Parity::Odd || odd_coord;
      K += negative ? -t : t;
    }
    const GradedPoly dx = left_deriv(P, var(VarKind::Base, a));
    if (!dx.is_zero()) {
      GradedPoly t = GradedPoly::variable(chart, var(VarKind::Fiber, a)) * substitute(dx, to_pi);
      K += p == Parity::Odd ? -t : t;
    }
  }
  return K;
}

GradedPoly at_zero_momenta(const GradedPoly& u) {
  return restrict_to(u, {VarKind::MomentumBase, VarKind::MomentumFiber});
}

}  // namespace

OddHamiltonian alpha(const GradedPoly& P) {
  if (!depends_only_on(P, {VarKind::Base, VarKind::AntiFiber})) {
    throw BracketError("alpha: P must be a function of x and x*");
  }
  GradedPoly K = alpha_homogeneous(P.even_part(), Parity::Even);
  K += alpha_homogeneous(P.odd_part(), Parity::Odd);
  return {std::move(K), P};
}

GradedPoly higher_koszul(const OddHamiltonian& K, const std::vector<GradedPoly>& forms,
                         const SignConvention& conv) {
  GradedPoly acc = K.K;
  for (const auto& w : forms) {
    if (!depends_only_on(w, {VarKind::Base, VarKind::Fiber})) {
      throw BracketError("koszul: arguments must be forms in x and dx");
    }
    acc = canonical_poisson(acc, w, conv);
  }
  return at_zero_momenta(acc);
}

GradedPoly higher_koszul(const GradedPoly& P, const std::vector<GradedPoly>& forms,
                         const SignConvention& conv) {
  const auto p = P.parity();
  if (!p || *p != Parity::Even) throw BracketError("koszul: P must be even");
  return higher_koszul(alpha(P), forms, conv);
}

int koszul_epsilon(const std::vector<Parity>& parities) {
  const std::size_t n = parities.size();
  std::size_t e = n;
  for (std::size_t i = 0; i + 1 < n; ++i) e += (n - 1 - i) * bit(parities[i]);
  return static_cast<int>(e % 2);
}

KoszulComparison koszul_on_differentials(const GradedPoly& P, const std::vector<GradedPoly>& functions,
                                         ArgPattern pattern, const SignConvention& conv) {
  std::vector<Parity> par;
  for (const auto& f : functions) {
    if (!depends_only_on(f, {VarKind::Base})) throw BracketError("koszul: arguments must be functions");
    const auto q = f.parity();
    if (!q) throw BracketError("koszul: arguments must be parity-homogeneous");
    par.push_back(*q);
  }
  const OddHamiltonian K = alpha(P);
  KoszulComparison out{GradedPoly(P.chart()), GradedPoly(P.chart()), GradedPoly(P.chart()),
                       koszul_epsilon(par)};
  std::vector<GradedPoly> args;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const bool differential = pattern == ArgPattern::Differentials ||
                              (pattern == ArgPattern::FirstFunction && i > 0);
    args.push_back(differential ? de_rham(functions[i]) : functions[i]);
  }
  out.lhs = higher_koszul(K, args, conv);

  switch (pattern) {
    case ArgPattern::Functions:
      if (functions.size() == 1) out.rhs = higher_poisson(P, functions, conv);
      break;
    case ArgPattern::FirstFunction: {
      GradedPoly hp = higher_poisson(P, functions, conv);
      out.rhs = out.epsilon ? -hp : hp;
      break;
    }
    case ArgPattern::Differentials: {
      GradedPoly dhp = de_rham(higher_poisson(P, functions, conv));
      out.rhs = out.epsilon ? dhp : -dhp;
      break;
    }
  }
  out.difference = out.lhs - out.rhs;
  return out;
}

}  // namespace superpoisson
