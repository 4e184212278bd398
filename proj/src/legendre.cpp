#include "superpoisson/legendre.hpp"

#include <sstream>

namespace superpoisson {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Variable var(VarKind k, std::size_t a) { return {k, static_cast<std::uint16_t>(a)}; }

void require_even(const GradedPoly& u, const char* what) {
  const auto p = u.parity();
  if (!p || *p != Parity::Even) throw LegendreError(std::string(what) + ": argument must be even");
}

// Gauss-Jordan inverse; nullopt when singular.
std::optional<Matrix> invert(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return std::nullopt;
    std::swap(m[r], m[c]);
    std::swap(inv[r], inv[c]);
    const Rational piv = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Matrix block(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix b(idx.size(), std::vector<Rational>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) b[i][j] = m[idx[i]][idx[j]];
  }
  return b;
}

std::uint32_t iteration_limit(const Truncation& t) {
  std::uint32_t sum = 0;
  bool bounded = true;
  for (Grading g : {Grading::FiberDegree, Grading::LambdaDegree, Grading::BaseDegree}) {
    if (auto o = t.order(g)) {
      sum += *o;
    } else {
      bounded = false;
    }
  }
  return sum + (bounded ? 3 : 32);
}

SubstitutionMap inverse_map(const GradedPoly& P, const Truncation& t) {
  return invert_fiber_map(phi_map(P), t).inverse;
}

}  // namespace

FiberMap phi_map(const GradedPoly& P) {
  require_even(P, "phi");
  if (!depends_only_on(P, {VarKind::Base, VarKind::AntiFiber})) {
    throw LegendreError("phi: P must be a function of x and x*");
  }
  FiberMap m{FiberDirection::Phi, P, SubstitutionMap(P.chart())};
  const Chart& chart = *P.chart();
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    GradedPoly img = left_deriv(P, var(VarKind::AntiFiber, a));
    if (chart.coord_parity(a) == Parity::Even) img = -img;
    m.map.assign(var(VarKind::Fiber, a), std::move(img));
  }
  return m;
}

FiberMap psi_map(const GradedPoly& omega) {
  require_even(omega, "psi");
  if (!depends_only_on(omega, {VarKind::Base, VarKind::Fiber})) {
    throw LegendreError("psi: omega must be a function of x and dx");
  }
  FiberMap m{FiberDirection::Psi, omega, SubstitutionMap(omega.chart())};
  for (std::size_t a = 0; a < omega.chart()->dim(); ++a) {
    m.map.assign(var(VarKind::AntiFiber, a), left_deriv(omega, var(VarKind::Fiber, a)));
  }
  return m;
}

GradedPoly phi_pullback(const GradedPoly& P, const GradedPoly& u) {
  return substitute(u, phi_map(P).map);
}

GradedPoly psi_pullback(const GradedPoly& omega, const GradedPoly& u) {
  return substitute(u, psi_map(omega).map);
}

std::string HessianReport::str() const {
  std::ostringstream os;
  os << (nondegenerate ? "nondegenerate" : "degenerate") << " [";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < matrix[i].size(); ++j) os << (j ? " " : "") << matrix[i][j].get_str();
  }
  os << "]";
  return os.str();
}

HessianReport hessian_nondegenerate(const GradedPoly& u, const std::vector<Rational>& base_point) {
  const bool in_antifiber = depends_only_on(u, {VarKind::Base, VarKind::AntiFiber});
  if (!in_antifiber && !depends_only_on(u, {VarKind::Base, VarKind::Fiber})) {
    throw LegendreError("nondeg: argument must live on one fiber family");
  }
  const VarKind fiber = in_antifiber ? VarKind::AntiFiber : VarKind::Fiber;
  const Chart& chart = *u.chart();
  const std::size_t n = chart.dim();

  SubstitutionMap at(u.chart());
  for (std::size_t a = 0; a < n; ++a) {
    at.assign(var(fiber, a), GradedPoly(u.chart()));
    const bool even = chart.coord_parity(a) == Parity::Even;
    const Rational v = (even && a < base_point.size()) ? base_point[a] : Rational(0);
    at.assign(var(VarKind::Base, a), GradedPoly::constant(u.chart(), v));
  }
  for (std::size_t i = 0; i < chart.params().size(); ++i) {
    at.assign(var(VarKind::Param, i), GradedPoly(u.chart()));
  }

  HessianReport r;
  r.matrix.assign(n, std::vector<Rational>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    const GradedPoly da = left_deriv(u, var(fiber, a));
    for (std::size_t b = 0; b < n; ++b) {
      r.matrix[a][b] = substitute(left_deriv(da, var(fiber, b)), at).constant_term();
    }
  }
  // Fiber variables over odd coordinates are even and form the even-even block.
  std::vector<std::size_t> even_block, odd_block;
  for (std::size_t a = 0; a < n; ++a) {
    (chart.coord_parity(a) == Parity::Odd ? even_block : odd_block).push_back(a);
  }
  r.nondegenerate = n > 0 && invert(block(r.matrix, even_block)).has_value() &&
                    invert(block(r.matrix, odd_block)).has_value();
  return r;
}

bool InversionResult::exact() const {
  for (const auto& r : residuals) {
    if (!r.is_zero()) return false;
  }
  return true;
}

GradedPoly InversionResult::residual() const {
  for (const auto& r : residuals) {
    if (!r.is_zero()) return r;
  }
  return GradedPoly(inverse.chart());
}

InversionResult invert_fiber_map(const FiberMap& m, const Truncation& t) {
  const ChartPtr& chart = m.source.chart();
  const std::size_t n = chart->dim();
  const VarKind T = m.replaced();
  const VarKind S = m.image();

  // g_b = sum_a L0[b][a] S_a + rest_b, with L0 constant.
  Matrix L0(n, std::vector<Rational>(n, 0));
  std::vector<GradedPoly> rest;
  for (std::size_t b = 0; b < n; ++b) {
    const GradedPoly& g = *m.map.find(var(T, b));
    GradedPoly r = g;
    for (const auto& [mono, c] : g.terms()) {
      const auto& f = mono.factors();
      if (f.size() == 1 && f[0].exp == 1 && f[0].var.kind == S) {
        L0[b][f[0].var.index] = c;
        r.add_term(mono, -c);
      }
    }
    rest.push_back(std::move(r));
  }
  const auto M = invert(L0);
  if (!M) throw LegendreError("inversion: singular linear part");

  auto apply_M = [&](const std::vector<GradedPoly>& v) {
    std::vector<GradedPoly> out;
    for (std::size_t a = 0; a < n; ++a) {
      GradedPoly s(chart);
      for (std::size_t b = 0; b < n; ++b) {
        if ((*M)[a][b] != 0) s += v[b] * (*M)[a][b];
      }
      out.push_back(std::move(s));
    }
    return out;
  };
  auto to_map = [&](const std::vector<GradedPoly>& h) {
    SubstitutionMap s(chart);
    for (std::size_t a = 0; a < n; ++a) s.assign(var(S, a), h[a]);
    return s;
  };

  std::vector<GradedPoly> targets;
  for (std::size_t b = 0; b < n; ++b) targets.push_back(GradedPoly::variable(chart, var(T, b)));

  std::vector<GradedPoly> h = apply_M(targets);
  for (auto& x : h) x = truncate(x, t);
  const std::uint32_t limit = iteration_limit(t);
  unsigned it = 0;
  for (;; ++it) {
    if (it > limit) throw LegendreError("inversion: iteration did not stabilize within the truncation order");
    const SubstitutionMap hs = to_map(h);
    std::vector<GradedPoly> rhs;
    for (std::size_t b = 0; b < n; ++b) rhs.push_back(targets[b] - substitute(rest[b], hs, t));
    std::vector<GradedPoly> next = apply_M(rhs);
    for (auto& x : next) x = truncate(x, t);
    if (next == h) break;
    h = std::move(next);
  }

  InversionResult res{to_map(h), t, {}, it};
  for (std::size_t b = 0; b < n; ++b) {
    res.residuals.push_back(truncate(substitute(*m.map.find(var(T, b)), res.inverse, t) - targets[b], t));
  }
  for (std::size_t a = 0; a < n; ++a) {
    const GradedPoly back = substitute(h[a], m.map, t);
    res.residuals.push_back(truncate(back - GradedPoly::variable(chart, var(S, a)), t));
  }
  return res;
}

GradedPoly phi_inverse_pullback(const GradedPoly& P, const GradedPoly& u, const Truncation& t) {
  if (!depends_only_on(u, {VarKind::Base, VarKind::AntiFiber})) {
    throw LegendreError("inverse pullback: argument must be a function of x and x*");
  }
  return truncate(substitute(u, inverse_map(P, t), t), t);
}

GradedPoly legendre_transform(const GradedPoly& P, const Truncation& t) {
  const GradedPoly src = fiber_euler(P, VarKind::AntiFiber) - P;
  return truncate(substitute(src, inverse_map(P, t), t), t);
}

GradedPoly legendre_inverse(const GradedPoly& omega, const Truncation& t) {
  const GradedPoly src = fiber_euler(omega, VarKind::Fiber) - omega;
  return truncate(substitute(src, invert_fiber_map(psi_map(omega), t).inverse, t), t);
}

GradedPoly omega_prime(const GradedPoly& P, const Truncation& t) {
  return truncate(substitute(P, inverse_map(P, t), t), t);
}

}  // namespace superpoisson
