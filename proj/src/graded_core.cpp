#include "superpoisson/graded_core.hpp"

#include <cctype>
#include <random>
#include <set>
#include <sstream>

namespace superpoisson {

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string to_string(VarKind k) {
  switch (k) {
    case VarKind::Param: return "Param";
    case VarKind::Base: return "Base";
    case VarKind::Fiber: return "Fiber";
    case VarKind::AntiFiber: return "AntiFiber";
    case VarKind::MomentumBase: return "MomentumBase";
    case VarKind::MomentumFiber: return "MomentumFiber";
  }
  return "?";
}

std::string to_string(Grading g) {
  switch (g) {
    case Grading::FiberDegree: return "fiber";
    case Grading::LambdaDegree: return "lambda";
    case Grading::BaseDegree: return "base";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Chart

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

// "x1" -> "1"; names not of the form x<suffix> are their own suffix.
std::string suffix_of(const std::string& name) {
  if (name.size() > 1 && name[0] == 'x') return name.substr(1);
  return name;
}

const std::set<std::string, std::less<>> kGreek = {
    "alpha", "beta", "gamma", "delta", "epsilon", "kappa", "lambda", "mu",
    "nu",    "rho",  "sigma", "tau",   "theta",   "omega", "chi",    "eta"};

}  // namespace

Chart::Chart(std::string name, std::vector<Coordinate> coords, std::vector<std::string> params)
    : name_(std::move(name)), coords_(std::move(coords)), params_(std::move(params)) {
  if (coords_.size() > 0xffff || params_.size() > 0xffff) throw ChartError("chart too large");
  auto insert = [this](const std::string& n, Variable v) {
    if (!is_identifier(n)) throw ChartError("invalid name '" + n + "'");
    if (!names_.emplace(n, v).second) throw ChartError("name collision on '" + n + "'");
  };
  for (std::size_t i = 0; i < params_.size(); ++i) {
    insert(params_[i], {VarKind::Param, static_cast<std::uint16_t>(i)});
  }
  for (std::size_t a = 0; a < coords_.size(); ++a) {
    const auto idx = static_cast<std::uint16_t>(a);
    for (auto kind : {VarKind::Base, VarKind::Fiber, VarKind::AntiFiber, VarKind::MomentumBase,
                      VarKind::MomentumFiber}) {
      insert(var_name({kind, idx}), {kind, idx});
    }
  }
}

std::size_t Chart::even_dim() const noexcept {
  return static_cast<std::size_t>(std::count_if(coords_.begin(), coords_.end(), [](const Coordinate& c) {
    return c.parity == Parity::Even;
  }));
}

bool Chart::valid(Variable v) const noexcept {
  if (v.kind == VarKind::Param) return v.index < params_.size();
  return v.index < coords_.size();
}

Parity Chart::parity(Variable v) const {
  if (v.kind == VarKind::Param) return Parity::Even;
  const Parity a = coords_.at(v.index).parity;
  switch (v.kind) {
    case VarKind::Base:
    case VarKind::MomentumBase: return a;
    default: return flip(a);
  }
}

std::string Chart::var_name(Variable v) const {
  if (v.kind == VarKind::Param) return params_.at(v.index);
  const std::string& n = coords_.at(v.index).name;
  switch (v.kind) {
    case VarKind::Base: return n;
    case VarKind::Fiber: return "d" + n;
    case VarKind::AntiFiber: return "xs" + suffix_of(n);
    case VarKind::MomentumBase: return "p" + suffix_of(n);
    case VarKind::MomentumFiber: return "pi" + suffix_of(n);
    default: break;
  }
  return "?";
}

std::string Chart::var_latex(Variable v) const {
  if (v.kind == VarKind::Param) {
    const auto& p = params_.at(v.index);
    return kGreek.count(p) ? "\\" + p : p;
  }
  const std::string& n = coords_.at(v.index).name;
  const bool xlike = n.size() > 1 && n[0] == 'x';
  const std::string sfx = suffix_of(n);
  const std::string base = xlike ? "x^{" + sfx + "}" : n;
  switch (v.kind) {
    case VarKind::Base: return base;
    case VarKind::Fiber: return "d" + base;
    case VarKind::AntiFiber: return xlike ? "x^*_{" + sfx + "}" : n + "^*";
    case VarKind::MomentumBase: return "p_{" + sfx + "}";
    case VarKind::MomentumFiber: return "\\pi_{" + sfx + "}";
    default: break;
  }
  return "?";
}

std::optional<Variable> Chart::lookup(std::string_view name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

std::vector<Variable> Chart::variables(VarKind kind) const {
  std::vector<Variable> out;
  const std::size_t n = kind == VarKind::Param ? params_.size() : coords_.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back({kind, static_cast<std::uint16_t>(i)});
  return out;
}

ChartPtr make_chart(std::vector<Coordinate> coords, std::vector<std::string> params, std::string name) {
  if (name.empty()) {
    std::size_t even = 0;
    for (const auto& c : coords) even += c.parity == Parity::Even;
    name = "R^{" + std::to_string(even) + "|" + std::to_string(coords.size() - even) + "}";
  }
  return std::make_shared<const Chart>(std::move(name), std::move(coords), std::move(params));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Monomial

std::uint32_t Monomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.exp;
  return d;
}

std::uint32_t Monomial::degree(VarKind kind) const noexcept {
  std::uint32_t d = 0;
  for (const auto& f : factors_) {
    if (f.var.kind == kind) d += f.exp;
  }
  return d;
}

std::uint32_t Monomial::exponent(Variable v) const noexcept {
  for (const auto& f : factors_) {
    if (f.var == v) return f.exp;
  }
  return 0;
}

Parity Monomial::parity(const Chart& chart) const {
  Parity p = Parity::Even;
  for (const auto& f : factors_) {
    if (f.exp % 2 == 1) p = p + chart.parity(f.var);
  }
  return p;
}

int Monomial::normalize(std::vector<Factor> fs, const Chart& chart, Monomial& out) {
  int sign = 1;
  for (const auto& f : fs) {
    if (f.exp == 0) throw std::invalid_argument("zero exponent in factor list");
    if (chart.parity(f.var) == Parity::Odd && f.exp > 1) return 0;
  }
  // Insertion sort; each transposition of two odd factors flips the sign.
  for (std::size_t i = 1; i < fs.size(); ++i) {
    for (std::size_t j = i; j > 0 && fs[j].var < fs[j - 1].var; --j) {
      if (chart.parity(fs[j].var) == Parity::Odd && chart.parity(fs[j - 1].var) == Parity::Odd) {
        sign = -sign;
      }
      std::swap(fs[j], fs[j - 1]);
    }
  }
  out.factors_.clear();
  for (const auto& f : fs) {
    if (!out.factors_.empty() && out.factors_.back().var == f.var) {
      if (chart.parity(f.var) == Parity::Odd) return 0;
      out.factors_.back().exp += f.exp;
    } else {
      out.factors_.push_back(f);
    }
  }
  return sign;
}

int Monomial::multiply(const Monomial& a, const Monomial& b, const Chart& chart, Monomial& out) {
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  // odd_after[i] = number of odd factors in fa[i..]
  std::vector<int> odd_after(fa.size() + 1, 0);
  for (std::size_t i = fa.size(); i-- > 0;) {
    odd_after[i] = odd_after[i + 1] + (chart.parity(fa[i].var) == Parity::Odd ? 1 : 0);
  }
  out.factors_.clear();
  out.factors_.reserve(fa.size() + fb.size());
  int swaps = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].var < fb[j].var)) {
      out.factors_.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].var < fa[i].var) {
      if (chart.parity(fb[j].var) == Parity::Odd) swaps += odd_after[i];
      out.factors_.push_back(fb[j++]);
    } else {
      if (chart.parity(fa[i].var) == Parity::Odd) return 0;
      out.factors_.push_back({fa[i].var, fa[i].exp + fb[j].exp});
      ++i;
      ++j;
    }
  }
  return swaps % 2 == 0 ? 1 : -1;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const noexcept {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da < db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  const std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (fa[k].var != fb[k].var) return fa[k].var < fb[k].var;
    if (fa[k].exp != fb[k].exp) return fa[k].exp > fb[k].exp;
  }
  return fa.size() < fb.size();
}

// ---------------------------------------------------------------------------
// GradedPoly

GradedPoly::GradedPoly(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw std::invalid_argument("null chart");
}

GradedPoly GradedPoly::constant(ChartPtr chart, const Rational& c) {
  GradedPoly p(std::move(chart));
  p.add_term(Monomial{}, c);
  return p;
}

GradedPoly GradedPoly::variable(ChartPtr chart, Variable v, const Rational& c) {
  return term(std::move(chart), {Factor{v, 1}}, c);
}

GradedPoly GradedPoly::term(ChartPtr chart, std::vector<Factor> factors, const Rational& c) {
  GradedPoly p(std::move(chart));
  for (const auto& f : factors) {
    if (!p.chart_->valid(f.var)) throw std::out_of_range("variable not in chart");
  }
  Monomial m;
  const int sign = Monomial::normalize(std::move(factors), *p.chart_, m);
  if (sign != 0) p.add_term(m, sign > 0 ? c : Rational(-c));
  return p;
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial{}); }

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Parity> GradedPoly::parity() const {
  std::optional<Parity> p;
  for (const auto& [m, c] : terms_) {
    const Parity q = m.parity(*chart_);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(Parity::Even);
}

GradedPoly GradedPoly::part(Parity p) const {
  GradedPoly out(chart_);
  for (const auto& [m, c] : terms_) {
    if (m.parity(*chart_) == p) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  Rational k = c;
  k.canonicalize();
  auto [it, inserted] = terms_.try_emplace(m, k);
  if (!inserted) {
    it->second += k;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void GradedPoly::check_chart(const GradedPoly& o) const {
  if (!same_chart(chart_, o.chart_)) {
    throw ChartError("chart mismatch: " + chart_->name() + " vs " + o.chart_->name());
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  check_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  check_chart(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c;
  k.canonicalize();
  for (auto& [m, v] : terms_) v *= k;
  return *this;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  return mul_truncated(a, b, Truncation::none());
}

bool GradedPoly::operator==(const GradedPoly& o) const {
  return same_chart(chart_, o.chart_) && terms_ == o.terms_;
}

namespace {

std::string factor_text(const Chart& chart, const Factor& f) {
  std::string s = chart.var_name(f.var);
  if (f.exp > 1) s += "^" + std::to_string(f.exp);
  return s;
}

std::string factor_latex(const Chart& chart, const Factor& f) {
  std::string s = chart.var_latex(f.var);
  if (f.exp > 1) {
    // x^{1} squared must not render as x^{1}^{2}
    if (s.find('^') != std::string::npos || s.find('_') != std::string::npos) s = "(" + s + ")";
    s += "^{" + std::to_string(f.exp) + "}";
  }
  return s;
}

std::string rational_latex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string GradedPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (m.empty()) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    bool first_factor = true;
    for (const auto& f : m.factors()) {
      if (!first_factor) os << "*";
      first_factor = false;
      os << factor_text(*chart_, f);
    }
  }
  return os.str();
}

std::string GradedPoly::latex() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (m.empty()) {
      os << rational_latex(mag);
      continue;
    }
    if (mag != 1) os << rational_latex(mag) << " ";
    bool first_factor = true;
    for (const auto& f : m.factors()) {
      if (!first_factor) os << " ";
      first_factor = false;
      os << factor_latex(*chart_, f);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Calculus

bool depends_only_on(const GradedPoly& u, const std::vector<VarKind>& kinds) {
  for (const auto& [m, c] : u.terms()) {
    for (const auto& f : m.factors()) {
      if (f.var.kind == VarKind::Param) continue;
      if (std::find(kinds.begin(), kinds.end(), f.var.kind) == kinds.end()) return false;
    }
  }
  return true;
}

bool depends_on(const GradedPoly& u, VarKind kind) {
  for (const auto& [m, c] : u.terms()) {
    if (m.degree(kind) > 0) return true;
  }
  return false;
}

GradedPoly left_deriv(const GradedPoly& u, Variable z) {
  const Chart& chart = *u.chart();
  const bool z_odd = chart.parity(z) == Parity::Odd;
  GradedPoly out(u.chart());
  for (const auto& [m, c] : u.terms()) {
    const auto& fs = m.factors();
    int odd_before = 0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (fs[k].var != z) {
        if (chart.parity(fs[k].var) == Parity::Odd) odd_before += static_cast<int>(fs[k].exp);
        continue;
      }
      std::vector<Factor> rest = fs;
      Rational coeff = c * fs[k].exp;
      if (z_odd && odd_before % 2 == 1) coeff = -coeff;
      if (--rest[k].exp == 0) rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      Monomial r;
      Monomial::normalize(std::move(rest), chart, r);  // already sorted, sign +1
      out.add_term(r, coeff);
      break;
    }
  }
  return out;
}

GradedPoly fiber_euler(const GradedPoly& u, VarKind family) {
  if (family != VarKind::AntiFiber && family != VarKind::Fiber) {
    throw std::invalid_argument("Euler field family must be Fiber or AntiFiber");
  }
  GradedPoly out(u.chart());
  for (const auto& [m, c] : u.terms()) out.add_term(m, c * m.degree(family));
  return out;
}

GradedPoly restrict_to(const GradedPoly& u, const std::vector<VarKind>& zero_kinds) {
  GradedPoly out(u.chart());
  for (const auto& [m, c] : u.terms()) {
    bool keep = true;
    for (auto k : zero_kinds) keep = keep && m.degree(k) == 0;
    if (keep) out.add_term(m, c);
  }
  return out;
}

std::uint32_t degree(const Monomial& m, Grading g) noexcept {
  switch (g) {
    case Grading::FiberDegree: return m.degree(VarKind::Fiber) + m.degree(VarKind::AntiFiber);
    case Grading::LambdaDegree: return m.degree(VarKind::Param);
    case Grading::BaseDegree: return m.degree(VarKind::Base);
  }
  return 0;
}

GradedPoly degree_slice(const GradedPoly& u, Grading g, std::uint32_t k) {
  GradedPoly out(u.chart());
  for (const auto& [m, c] : u.terms()) {
    if (degree(m, g) == k) out.add_term(m, c);
  }
  return out;
}

Truncation Truncation::defaults() {
  Truncation t;
  t.set(Grading::FiberDegree, 6).set(Grading::LambdaDegree, 2).set(Grading::BaseDegree, 4);
  return t;
}

Truncation& Truncation::set(Grading g, std::uint32_t order) {
  for (auto& s : specs) {
    if (s.grading == g) {
      s.order = order;
      return *this;
    }
  }
  specs.push_back({g, order});
  return *this;
}

std::optional<std::uint32_t> Truncation::order(Grading g) const {
  for (const auto& s : specs) {
    if (s.grading == g) return s.order;
  }
  return std::nullopt;
}

bool Truncation::keeps(const Monomial& m) const noexcept {
  for (const auto& s : specs) {
    if (degree(m, s.grading) > s.order) return false;
  }
  return true;
}

std::string Truncation::str() const {
  if (specs.empty()) return "none";
  std::string out;
  for (const auto& s : specs) {
    if (!out.empty()) out += ",";
    out += to_string(s.grading) + "<=" + std::to_string(s.order);
  }
  return out;
}

GradedPoly truncate(const GradedPoly& u, const Truncation& t) {
  if (t.empty()) return u;
  GradedPoly out(u.chart());
  for (const auto& [m, c] : u.terms()) {
    if (t.keeps(m)) out.add_term(m, c);
  }
  return out;
}

GradedPoly truncate(const GradedPoly& u, const TruncationSpec& t) {
  return truncate(u, Truncation{{t}});
}

GradedPoly mul_truncated(const GradedPoly& a, const GradedPoly& b, const Truncation& t) {
  if (!same_chart(a.chart(), b.chart())) {
    throw ChartError("chart mismatch: " + a.chart()->name() + " vs " + b.chart()->name());
  }
  GradedPoly out(a.chart());
  const Chart& chart = *a.chart();
  Monomial m;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = Monomial::multiply(ma, mb, chart, m);
      if (s == 0 || !t.keeps(m)) continue;
      Rational c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(m, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

void SubstitutionMap::assign(Variable v, GradedPoly image) {
  if (!chart_->valid(v)) throw SubstitutionError("variable not in chart");
  if (!same_chart(chart_, image.chart())) throw SubstitutionError("image lives on a different chart");
  const auto p = image.parity();
  if (!p) {
    throw SubstitutionError("image of " + chart_->var_name(v) + " is parity-mixed");
  }
  if (!image.is_zero() && *p != chart_->parity(v)) {
    throw SubstitutionError("image of " + chart_->var_name(v) + " has parity " + to_string(*p) +
                            ", expected " + to_string(chart_->parity(v)));
  }
  map_.insert_or_assign(v, std::move(image));
}

const GradedPoly* SubstitutionMap::find(Variable v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

GradedPoly substitute(const GradedPoly& u, const SubstitutionMap& s, const Truncation& t) {
  if (!same_chart(u.chart(), s.chart())) throw SubstitutionError("substitution on a different chart");
  const ChartPtr& chart = u.chart();
  // powers[v][e-1] = image(v)^e
  std::map<Variable, std::vector<GradedPoly>> powers;
  auto power = [&](Variable v, std::uint32_t e) -> const GradedPoly& {
    auto& list = powers[v];
    if (list.empty()) {
      const GradedPoly* img = s.find(v);
      list.push_back(truncate(img ? *img : GradedPoly::variable(chart, v), t));
    }
    while (list.size() < e) list.push_back(mul_truncated(list.back(), list.front(), t));
    return list[e - 1];
  };
  GradedPoly out(chart);
  for (const auto& [m, c] : u.terms()) {
    GradedPoly acc = GradedPoly::constant(chart, c);
    for (const auto& f : m.factors()) {
      acc = mul_truncated(acc, power(f.var, f.exp), t);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random fixtures

GradedPoly random_poly(const ChartPtr& chart, const RandomPolySpec& spec, std::uint64_t seed) {
  std::vector<std::vector<Variable>> by_kind;
  bool has_odd = false;
  for (auto k : spec.kinds) {
    auto vars = chart->variables(k);
    for (auto v : vars) has_odd = has_odd || chart->parity(v) == Parity::Odd;
    if (!vars.empty()) by_kind.push_back(std::move(vars));
  }
  if (spec.parity == Parity::Odd && (!has_odd || spec.max_degree == 0)) {
    throw std::invalid_argument("odd parity unreachable with the requested kinds and degrees");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };

  GradedPoly out(chart);
  const std::uint64_t wanted = 1 + uniform(std::max<std::uint32_t>(spec.max_terms, 1));
  std::uint64_t accepted = 0;
  for (int attempt = 0; attempt < 400 && accepted < wanted; ++attempt) {
    std::vector<Factor> fs;
    for (const auto& vars : by_kind) {
      const auto d = uniform(spec.max_degree + 1);
      for (std::uint64_t k = 0; k < d; ++k) fs.push_back({vars[uniform(vars.size())], 1});
    }
    const auto range = static_cast<std::uint64_t>(std::max(spec.coeff_range, 1));
    long num = static_cast<long>(1 + uniform(range));
    if (uniform(2) == 1) num = -num;
    Rational c(num);
    if (uniform(4) == 0) c /= 2;
    GradedPoly t = GradedPoly::term(chart, fs, c);
    if (t.is_zero() || t.parity() != spec.parity) continue;
    out += t;
    ++accepted;
  }
  return out;
}

}  // namespace superpoisson
