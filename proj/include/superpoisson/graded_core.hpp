#ifndef SUPERPOISSON_GRADED_CORE_HPP
#define SUPERPOISSON_GRADED_CORE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace superpoisson {

using Rational = mpq_class;

/// Z2-grading. Arithmetic is mod 2.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator+(Parity a, Parity b) noexcept {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr Parity flip(Parity p) noexcept { return p + Parity::Odd; }
constexpr int bit(Parity p) noexcept { return static_cast<int>(p); }
std::string to_string(Parity p);

/// Variable families. The enumerator order is the canonical factor order.
/// Formal parameters (lambda) are even central variables and sort first.
enum class VarKind : std::uint8_t {
  Param = 0,
  Base = 1,           // x^a
  Fiber = 2,          // dx^a
  AntiFiber = 3,      // x*_a
  MomentumBase = 4,   // p_a
  MomentumFiber = 5,  // pi_a
};
std::string to_string(VarKind k);

struct Variable {
  VarKind kind = VarKind::Base;
  std::uint16_t index = 0;

  bool operator==(const Variable&) const = default;
  /// Canonical order: kind rank ascending, then declaration index descending.
  /// The descending index makes x*_2 x*_1 (rather than x*_1 x*_2) canonical.
  std::strong_ordering operator<=>(const Variable& o) const noexcept {
    if (auto c = kind <=> o.kind; c != 0) return c;
    return o.index <=> index;
  }
};

struct Coordinate {
  std::string name;
  Parity parity = Parity::Even;
};

class ChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base coordinates with parities plus formal parameters. Immutable.
class Chart {
 public:
  Chart(std::string name, std::vector<Coordinate> coords, std::vector<std::string> params = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Coordinate>& coords() const noexcept { return coords_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  std::size_t even_dim() const noexcept;
  std::size_t odd_dim() const noexcept { return dim() - even_dim(); }

  Parity coord_parity(std::size_t a) const { return coords_.at(a).parity; }
  Parity parity(Variable v) const;
  std::string var_name(Variable v) const;
  std::string var_latex(Variable v) const;
  std::optional<Variable> lookup(std::string_view name) const;
  std::vector<Variable> variables(VarKind kind) const;
  bool valid(Variable v) const noexcept;

  bool operator==(const Chart& o) const noexcept {
    return name_ == o.name_ && coords_.size() == o.coords_.size() && params_ == o.params_ &&
           std::equal(coords_.begin(), coords_.end(), o.coords_.begin(),
                      [](const Coordinate& a, const Coordinate& b) {
                        return a.name == b.name && a.parity == b.parity;
                      });
  }

 private:
  std::string name_;
  std::vector<Coordinate> coords_;
  std::vector<std::string> params_;
  std::map<std::string, Variable, std::less<>> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Builds a chart; an empty name becomes "R^{p|q}".
ChartPtr make_chart(std::vector<Coordinate> coords, std::vector<std::string> params = {},
                    std::string name = {});
bool same_chart(const ChartPtr& a, const ChartPtr& b) noexcept;

struct Factor {
  Variable var;
  std::uint32_t exp = 1;
  bool operator==(const Factor&) const = default;
};

/// Sorted product of variables. The sign produced by sorting is carried by the
/// owning term's coefficient, never by the monomial.
class Monomial {
 public:
  Monomial() = default;

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }
  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree(VarKind kind) const noexcept;
  std::uint32_t exponent(Variable v) const noexcept;
  Parity parity(const Chart& chart) const;

  /// Sorts `factors` into canonical order. Returns the Koszul sign (+1/-1), or 0
  /// if an odd variable appears more than once.
  static int normalize(std::vector<Factor> factors, const Chart& chart, Monomial& out);

  /// Product a*b as a normalized monomial; returns the sign (0 means the product vanishes).
  static int multiply(const Monomial& a, const Monomial& b, const Chart& chart, Monomial& out);

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Term order: total degree, then factors lexicographically.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  explicit GradedPoly(ChartPtr chart);

  static GradedPoly constant(ChartPtr chart, const Rational& c);
  static GradedPoly variable(ChartPtr chart, Variable v, const Rational& c = 1);
  /// c * f_1 * f_2 * ... in the given (unsorted) order.
  static GradedPoly term(ChartPtr chart, std::vector<Factor> factors, const Rational& c = 1);

  const ChartPtr& chart() const noexcept { return chart_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of the constant monomial.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Parity if homogeneous (zero counts as even), nullopt when mixed.
  std::optional<Parity> parity() const;
  GradedPoly part(Parity p) const;
  GradedPoly even_part() const { return part(Parity::Even); }
  GradedPoly odd_part() const { return part(Parity::Odd); }

  /// Adds c*m, m already normalized.
  void add_term(const Monomial& m, const Rational& c);

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly operator-() const;

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }

  bool operator==(const GradedPoly& o) const;

  /// Canonical text form, e.g. `2*x1*xs1 - 3/2*xs2`.
  std::string str() const;
  std::string latex() const;

 private:
  void check_chart(const GradedPoly& o) const;

  ChartPtr chart_;
  TermMap terms_;
};

/// True if every variable of u belongs to one of `kinds` (Params always allowed).
bool depends_only_on(const GradedPoly& u, const std::vector<VarKind>& kinds);
bool depends_on(const GradedPoly& u, VarKind kind);

/// Left derivative: d(z m)/dz = m.
GradedPoly left_deriv(const GradedPoly& u, Variable z);

/// Multiplies each term by its degree in `family` (AntiFiber or Fiber).
GradedPoly fiber_euler(const GradedPoly& u, VarKind family);

/// Sets every variable of the listed kinds to zero.
GradedPoly restrict_to(const GradedPoly& u, const std::vector<VarKind>& zero_kinds);

enum class Grading : std::uint8_t { FiberDegree, LambdaDegree, BaseDegree };
std::string to_string(Grading g);

/// Fiber degree counts Fiber and AntiFiber factors, lambda degree counts
/// parameters, base degree counts Base factors.
std::uint32_t degree(const Monomial& m, Grading g) noexcept;
GradedPoly degree_slice(const GradedPoly& u, Grading g, std::uint32_t k);

struct TruncationSpec {
  Grading grading = Grading::FiberDegree;
  std::uint32_t order = 0;
  bool operator==(const TruncationSpec&) const = default;
};

/// Simultaneous cutoffs; terms above any listed order are dropped.
struct Truncation {
  std::vector<TruncationSpec> specs;

  static Truncation none() { return {}; }
  /// Fiber 6, lambda 2, base 4.
  static Truncation defaults();
  Truncation& set(Grading g, std::uint32_t order);
  std::optional<std::uint32_t> order(Grading g) const;
  bool keeps(const Monomial& m) const noexcept;
  bool empty() const noexcept { return specs.empty(); }
  std::string str() const;
  bool operator==(const Truncation&) const = default;
};

GradedPoly truncate(const GradedPoly& u, const Truncation& t);
GradedPoly truncate(const GradedPoly& u, const TruncationSpec& t);

/// Product truncated on the fly.
GradedPoly mul_truncated(const GradedPoly& a, const GradedPoly& b, const Truncation& t);

class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parity-consistent assignment Variable -> polynomial. Unassigned variables map to themselves.
class SubstitutionMap {
 public:
  explicit SubstitutionMap(ChartPtr chart) : chart_(std::move(chart)) {}

  /// Throws SubstitutionError if `image` is not homogeneous of the variable's parity.
  void assign(Variable v, GradedPoly image);
  const GradedPoly* find(Variable v) const;
  const std::map<Variable, GradedPoly>& assignments() const noexcept { return map_; }
  const ChartPtr& chart() const noexcept { return chart_; }

 private:
  ChartPtr chart_;
  std::map<Variable, GradedPoly> map_;
};

/// Algebra homomorphism extending `s`. With a truncation, intermediate products are truncated.
GradedPoly substitute(const GradedPoly& u, const SubstitutionMap& s,
                      const Truncation& t = Truncation::none());

struct RandomPolySpec {
  std::vector<VarKind> kinds;
  /// Upper bound on the degree in each listed kind.
  std::uint32_t max_degree = 2;
  Parity parity = Parity::Even;
  std::uint32_t max_terms = 6;
  /// Coefficients are drawn from {-range..range} \ {0}, occasionally halved.
  int coeff_range = 3;
};

/// Deterministic for a fixed seed; the result is homogeneous of `spec.parity`.
/// Throws std::invalid_argument when the parity cannot be reached.
GradedPoly random_poly(const ChartPtr& chart, const RandomPolySpec& spec, std::uint64_t seed);

}  // namespace superpoisson

#endif  // SUPERPOISSON_GRADED_CORE_HPP
