#include "superpoisson/verify.hpp"

#include <json.hpp>

#include <functional>
#include <random>

namespace superpoisson {

namespace {

Variable var(VarKind k, std::size_t a) { return {k, static_cast<std::uint16_t>(a)}; }

void require_even(const GradedPoly& P, const char* what) {
  const auto p = P.parity();
  if (!p || *p != Parity::Even) throw BracketError(std::string(what) + ": P must be even");
}

// All exponent assignments over `vars` with total degree <= d; odd variables capped at 1.
void enumerate(const Chart& chart, const std::vector<Variable>& vars, std::size_t i, unsigned d,
               std::vector<Factor>& cur, std::vector<std::vector<Factor>>& out) {
  if (i == vars.size()) {
    out.push_back(cur);
    return;
  }
  enumerate(chart, vars, i + 1, d, cur, out);
  const unsigned cap = chart.parity(vars[i]) == Parity::Odd ? 1 : d;
  for (unsigned e = 1; e <= std::min(cap, d); ++e) {
    cur.push_back({vars[i], e});
    enumerate(chart, vars, i + 1, d - e, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Factor>> monomials(const Chart& chart, VarKind kind, unsigned d) {
  std::vector<std::vector<Factor>> out;
  std::vector<Factor> cur;
  enumerate(chart, chart.variables(kind), 0, d, cur, out);
  return out;
}

GradedPoly restrict_m(const GradedPoly& u) { return restrict_to(u, {VarKind::AntiFiber}); }

Parity parity_of(const GradedPoly& f) {
  const auto p = f.parity();
  if (!p) throw BracketError("test functions must be parity-homogeneous");
  return *p;
}

std::vector<std::vector<std::size_t>> tuples(std::size_t k, unsigned n, std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0) return out;
  if (n <= 2) {
    std::vector<std::size_t> cur(n, 0);
    std::function<void(unsigned)> rec = [&](unsigned i) {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (std::size_t j = 0; j < k; ++j) {
        cur[i] = j;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (int s = 0; s < 6; ++s) {
    std::vector<std::size_t> t(n);
    for (auto& x : t) x = pick(rng);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<GradedPoly> select(const std::vector<GradedPoly>& fs, const std::vector<std::size_t>& idx) {
  std::vector<GradedPoly> out;
  for (auto i : idx) out.push_back(fs[i]);
  return out;
}

}  // namespace

BracketReport::BracketReport(std::string n, const ChartPtr& c)
    : name(std::move(n)), chart(c->name()), residual(c) {}

void BracketReport::record(const GradedPoly& r) {
  ++cases;
  if (r.is_zero()) return;
  ++failures;
  if (pass) {
    pass = false;
    residual = r;
  }
}

void BracketReport::merge(const BracketReport& o) {
  cases += o.cases;
  failures += o.failures;
  if (pass && !o.pass) {
    pass = false;
    residual = o.residual;
  }
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

std::string BracketReport::line() const {
  return "CHECK " + name + " " + chart + (pass ? " PASS" : " FAIL") + " residual=" + residual.str();
}

std::string BracketReport::json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["chart"] = chart;
  j["inputs"] = inputs;
  j["residual"] = residual.str();
  j["truncation"] = truncation ? nlohmann::ordered_json(truncation->str()) : nlohmann::ordered_json(nullptr);
  j["pass"] = pass;
  j["cases"] = cases;
  j["failures"] = failures;
  if (!notes.empty()) j["notes"] = notes;
  return j.dump();
}

std::vector<GradedPoly> monomial_forms(const ChartPtr& chart, unsigned max_fiber, unsigned max_base) {
  std::vector<GradedPoly> out;
  for (const auto& b : monomials(*chart, VarKind::Base, max_base)) {
    for (const auto& f : monomials(*chart, VarKind::Fiber, max_fiber)) {
      std::vector<Factor> all = b;
      all.insert(all.end(), f.begin(), f.end());
      out.push_back(GradedPoly::term(chart, all));
    }
  }
  return out;
}

std::vector<GradedPoly> test_functions(const ChartPtr& chart, unsigned random_count, std::uint64_t seed) {
  std::vector<GradedPoly> out;
  for (std::size_t a = 0; a < chart->dim(); ++a) out.push_back(GradedPoly::variable(chart, var(VarKind::Base, a)));
  const bool has_odd = chart->odd_dim() > 0;
  for (unsigned i = 0; i < random_count; ++i) {
    RandomPolySpec spec{{VarKind::Base}, 2, (has_odd && i % 2) ? Parity::Odd : Parity::Even, 4, 3};
    // constants make every bracket vanish; redraw a few times
    for (std::uint64_t k = 0; k < 8; ++k) {
      GradedPoly f = random_poly(chart, spec, seed + i + 1000 * k);
      if (f.is_zero() || (f.size() == 1 && f.terms().begin()->first.empty())) continue;
      out.push_back(std::move(f));
      break;
    }
  }
  return out;
}

BracketReport check_discrepancy(const GradedPoly& P, const std::vector<GradedPoly>& forms,
                                const SignConvention& conv) {
  require_even(P, "check_discrepancy");
  BracketReport rep("discrepancy", P.chart());
  rep.inputs = {P.str(), std::to_string(forms.size()) + " forms"};
  const FiberMap phi = phi_map(P);
  const GradedPoly PP = schouten(P, P, conv);
  for (const auto& w : forms) {
    const GradedPoly lhs = substitute(de_rham(w), phi.map) - schouten(P, substitute(w, phi.map), conv);
    const GradedPoly rhs = substitute(kappa(PP, w), phi.map) * Rational(-1, 2);
    rep.record(lhs - rhs);
  }
  return rep;
}

BracketReport check_discrepancy(const GradedPoly& P) {
  return check_discrepancy(P, monomial_forms(P.chart()));
}

BracketReport check_domega(const GradedPoly& P, const Truncation& t, const SignConvention& conv) {
  require_even(P, "check_domega");
  BracketReport rep("domega", P.chart());
  rep.inputs = {P.str()};
  Truncation cmp = t;
  if (auto b = t.order(Grading::BaseDegree); b && *b > 0) cmp.set(Grading::BaseDegree, *b - 1);
  rep.truncation = cmp;

  const GradedPoly PP = schouten(P, P, conv);
  const GradedPoly dw = truncate(de_rham(legendre_transform(P, t)), cmp);
  const GradedPoly rhs = truncate(phi_inverse_pullback(P, PP, t), cmp) * Rational(-1, 2);
  rep.record(truncate(dw - rhs, cmp));
  const bool flat = truncate(PP, cmp).is_zero();
  const bool closed = dw.is_zero();
  rep.notes.push_back(std::string("[P,P]=0: ") + (flat ? "yes" : "no") + ", dw=0: " + (closed ? "yes" : "no"));
  if (flat != closed) rep.record(flat ? dw : PP);
  return rep;
}

BracketReport check_linfty(const GradedPoly& P, unsigned N, const std::vector<GradedPoly>& functions,
                           const Truncation& t, const SignConvention& conv) {
  require_even(P, "check_linfty");
  BracketReport rep("linfty", P.chart());
  rep.inputs = {P.str(), "N=" + std::to_string(N), std::to_string(functions.size()) + " functions"};
  if (!t.empty()) rep.truncation = t;
  for (const auto& f : functions) parity_of(f);

  // Only x*-degree <= N - n of the n-th iterate can reach the restriction.
  auto prune = [&](const GradedPoly& u, unsigned n) {
    Truncation tt = t;
    tt.set(Grading::FiberDegree, std::min(N - n, t.order(Grading::FiberDegree).value_or(N)));
    return truncate(u, tt);
  };
  std::function<void(const GradedPoly&, unsigned)> descend = [&](const GradedPoly& acc, unsigned n) {
    rep.record(truncate(restrict_m(acc), t));
    if (n == N) return;
    for (const auto& f : functions) descend(prune(schouten(acc, f, conv), n + 1), n + 1);
  };
  descend(prune(schouten(P, P, conv), 0), 0);

  // {.., f, g, ..} = -(-1)^{fg} {.., g, f, ..}
  std::mt19937_64 rng(0x5eed);
  for (unsigned n = 2; n <= std::min(N, 3u); ++n) {
    for (const auto& idx : tuples(functions.size(), n, rng)) {
      const auto fs = select(functions, idx);
      const GradedPoly base = higher_poisson(P, fs, conv);
      for (unsigned i = 0; i + 1 < n; ++i) {
        auto sw = fs;
        std::swap(sw[i], sw[i + 1]);
        const bool both_odd = parity_of(fs[i]) == Parity::Odd && parity_of(fs[i + 1]) == Parity::Odd;
        const GradedPoly other = higher_poisson(P, sw, conv);
        rep.record(truncate(both_odd ? base - other : base + other, t));
      }
    }
  }
  return rep;
}

BracketReport check_linfty(const GradedPoly& P, unsigned N, const Truncation& t) {
  return check_linfty(P, N, test_functions(P.chart()), t);
}

std::vector<std::vector<GradedPoly>> raised_tensor(const GradedPoly& P) {
  const Chart& chart = *P.chart();
  const std::size_t n = chart.dim();
  std::vector<std::vector<GradedPoly>> T(n, std::vector<GradedPoly>(n, GradedPoly(P.chart())));
  for (std::size_t a = 0; a < n; ++a) {
    GradedPoly phi = left_deriv(P, var(VarKind::AntiFiber, a));
    const int pa = bit(chart.coord_parity(a));
    if (pa == 0) phi = -phi;
    for (std::size_t b = 0; b < n; ++b) {
      const int pb = bit(chart.coord_parity(b));
      GradedPoly d = left_deriv(phi, var(VarKind::AntiFiber, b));
      T[a][b] = ((pb + 1) * (pa + pb)) % 2 ? -d : d;
    }
  }
  return T;
}

BracketReport check_koszul_suite(const GradedPoly& P, const std::vector<GradedPoly>& samples,
                                 const std::vector<GradedPoly>& functions, unsigned N,
                                 const SignConvention& conv) {
  require_even(P, "check_koszul");
  const ChartPtr& chart = P.chart();
  BracketReport rep("koszul", chart);
  rep.inputs = {P.str(), "N=" + std::to_string(N), std::to_string(samples.size()) + " samples",
                std::to_string(functions.size()) + " functions"};
  const OddHamiltonian K = alpha(P);

  if (!P.is_zero() && P == degree_slice(P, Grading::FiberDegree, 2)) {
    const auto Pab = raised_tensor(P);
    for (std::size_t a = 0; a < chart->dim(); ++a) {
      const GradedPoly xa = GradedPoly::variable(chart, var(VarKind::Base, a));
      const GradedPoly dxa = GradedPoly::variable(chart, var(VarKind::Fiber, a));
      for (std::size_t b = 0; b < chart->dim(); ++b) {
        const GradedPoly xb = GradedPoly::variable(chart, var(VarKind::Base, b));
        const GradedPoly dxb = GradedPoly::variable(chart, var(VarKind::Fiber, b));
        rep.record(higher_koszul(K, {xa, xb}, conv));
        rep.record(higher_koszul(K, {xa, dxb}, conv) + Pab[a][b]);
        rep.record(higher_koszul(K, {dxa, dxb}, conv) - de_rham(Pab[a][b]));
      }
    }
    rep.notes.push_back("classical relations checked");
  }

  std::mt19937_64 rng(0xc0ffee);
  for (unsigned n = 1; n <= N; ++n) {
    for (const auto& idx : tuples(functions.size(), n, rng)) {
      const auto fs = select(functions, idx);
      rep.record(koszul_on_differentials(P, fs, ArgPattern::Functions, conv).difference);
      rep.record(koszul_on_differentials(P, fs, ArgPattern::FirstFunction, conv).difference);
      rep.record(koszul_on_differentials(P, fs, ArgPattern::Differentials, conv).difference);
    }
  }

  // alpha([A,B]) = (-1)^{A+1} (alpha A, alpha B)
  auto morphism = [&](const GradedPoly& A, const GradedPoly& B) {
    const auto pa = A.parity();
    if (!pa || !B.parity()) throw BracketError("check_koszul: samples must be parity-homogeneous");
    const GradedPoly rhs = canonical_poisson(alpha(A).K, alpha(B).K, conv);
    rep.record(alpha(schouten(A, B, conv)).K - (*pa == Parity::Odd ? rhs : -rhs));
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    morphism(P, samples[i]);
    if (i + 1 < samples.size()) morphism(samples[i], samples[i + 1]);
  }

  if (schouten(P, P, conv).is_zero()) {
    rep.record(canonical_poisson(K.K, K.K, conv));
    rep.notes.push_back("(K,K) checked");
  }
  return rep;
}

BracketReport check_koszul_suite(const GradedPoly& P, unsigned N) {
  std::vector<GradedPoly> samples;
  for (unsigned i = 0; i < 8; ++i) {
    RandomPolySpec spec{{VarKind::Base, VarKind::AntiFiber}, 2, i % 2 ? Parity::Odd : Parity::Even, 4, 3};
    samples.push_back(random_poly(P.chart(), spec, 101 + i));
  }
  return check_koszul_suite(P, samples, test_functions(P.chart()), N);
}

BracketReport check_weight_identities(const GradedPoly& P, const GradedPoly& Q, const SignConvention& conv) {
  BracketReport rep("weight", P.chart());
  rep.inputs = {P.str(), Q.str()};
  auto E = [](const GradedPoly& u) { return fiber_euler(u, VarKind::AntiFiber); };
  const GradedPoly PQ = schouten(P, Q, conv);
  rep.record(E(PQ) - schouten(E(P), Q, conv) - schouten(P, E(Q), conv) + PQ);
  if (P.parity() == Parity::Even) {
    const GradedPoly PP = schouten(P, P, conv);
    rep.record(schouten(P, E(P) - P, conv) - (E(PP) - PP) * Rational(1, 2));
  }
  return rep;
}

}  // namespace superpoisson
