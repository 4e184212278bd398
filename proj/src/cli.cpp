#include "superpoisson/cli.hpp"

#include <cctype>
#include <ostream>
#include <set>
#include <sstream>

namespace superpoisson {

ScriptError::ScriptError(Kind kind, int line, int column, const std::string& msg)
    : std::runtime_error(msg), kind_(kind), line_(line), column_(column) {}

namespace {

enum class Tok { Ident, Number, String, Sym, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
  std::size_t offset;
};

[[noreturn]] void syntax(const Token& t, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Syntax, t.line, t.col, msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1, depth = 0;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    const int l = line, cc = col;
    const std::size_t start = i;
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::Sep, "\n", l, cc, start});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cc, start});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cc, start});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') syntax({Tok::String, "", l, cc, start}, "unterminated string");
      out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), l, cc, start});
      advance(j + 1 - i);
    } else if (c == ';') {
      out.push_back({Tok::Sep, ";", l, cc, start});
      advance(1);
    } else if (std::string_view("(),+-*/^:=").find(c) != std::string_view::npos) {
      if (c == '(') ++depth;
      if (c == ')' && depth > 0) --depth;
      out.push_back({Tok::Sym, std::string(1, c), l, cc, start});
      advance(1);
    } else {
      syntax({Tok::Sym, std::string(1, c), l, cc, start}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col, src.size()});
  return out;
}

const std::set<std::string, std::less<>>& reserved() {
  static const std::set<std::string, std::less<>> names{
      "coords", "param", "let", "set", "schouten", "poisson", "hp", "koszul", "alpha", "d", "dP", "kappa",
      "euler", "eulerd", "slice", "restrict", "legendre", "invlegendre", "phi", "psi", "omegaprime",
      "nondeg", "trunc", "check_discrepancy", "check_domega", "check_linfty", "check_koszul",
      "check_weight", "check_equal", "check_zero", "check_roundtrip"};
  return names;
}

}  // namespace

struct Node {
  enum Kind { Num, Str, Ident, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  std::string text;
  std::vector<Node> kids;
  int line = 0;
  int col = 0;
};

struct Session::Parser {
  std::string_view src;
  std::vector<Token> toks;
  std::size_t i = 0;

  explicit Parser(std::string_view s) : src(s), toks(lex(s)) {}

  const Token& peek() const { return toks[i]; }
  const Token& next() { return toks[i < toks.size() - 1 ? i++ : i]; }
  bool at_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool at_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  const Token& expect_sym(const char* s) {
    if (!at_sym(s)) syntax(peek(), std::string("expected '") + s + "'");
    return next();
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::Ident) syntax(peek(), "expected identifier");
    return next();
  }
  bool at_end_of_statement() const { return peek().kind == Tok::Sep || peek().kind == Tok::End; }

  Node expr() {
    Node lhs = term();
    while (at_sym("+") || at_sym("-")) {
      const Token& op = next();
      Node rhs = term();
      lhs = Node{op.text == "+" ? Node::Add : Node::Sub, op.text, {std::move(lhs), std::move(rhs)}, op.line, op.col};
    }
    return lhs;
  }
  Node term() {
    Node lhs = unary();
    while (at_sym("*") || at_sym("/")) {
      const Token& op = next();
      Node rhs = unary();
      lhs = Node{op.text == "*" ? Node::Mul : Node::Div, op.text, {std::move(lhs), std::move(rhs)}, op.line, op.col};
    }
    return lhs;
  }
  Node unary() {
    if (at_sym("-")) {
      const Token& op = next();
      return Node{Node::Neg, "-", {unary()}, op.line, op.col};
    }
    return power();
  }
  Node power() {
    Node base = primary();
    if (at_sym("^")) {
      const Token& op = next();
      if (peek().kind != Tok::Number) syntax(peek(), "expected integer exponent");
      const Token& e = next();
      return Node{Node::Pow, e.text, {std::move(base)}, op.line, op.col};
    }
    return base;
  }
  Node primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        next();
        return Node{Node::Num, t.text, {}, t.line, t.col};
      case Tok::String:
        next();
        return Node{Node::Str, t.text, {}, t.line, t.col};
      case Tok::Ident: {
        next();
        if (!at_sym("(")) return Node{Node::Ident, t.text, {}, t.line, t.col};
        next();
        Node call{Node::Call, t.text, {}, t.line, t.col};
        if (!at_sym(")")) {
          call.kids.push_back(expr());
          while (at_sym(",")) {
            next();
            call.kids.push_back(expr());
          }
        }
        expect_sym(")");
        return call;
      }
      case Tok::Sym:
        if (t.text == "(") {
          next();
          Node e = expr();
          expect_sym(")");
          return e;
        }
        break;
      default:
        break;
    }
    syntax(t, t.kind == Tok::Sep || t.kind == Tok::End ? "unexpected end of statement"
                                                        : "unexpected '" + t.text + "'");
  }
};

namespace {

[[noreturn]] void semantic(const Node& n, const std::string& msg) {
  throw ScriptError(ScriptError::Kind::Semantic, n.line, n.col, msg);
}

void arity(const Node& n, std::size_t lo, std::size_t hi) {
  const std::size_t k = n.kids.size();
  if (k < lo || k > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
    if (hi == SIZE_MAX) want = "at least " + std::to_string(lo);
    semantic(n, n.text + ": expected " + want + " arguments, got " + std::to_string(k));
  }
}

std::optional<VarKind> kind_name(const std::string& s) {
  if (s == "x") return VarKind::Base;
  if (s == "dx") return VarKind::Fiber;
  if (s == "xs") return VarKind::AntiFiber;
  if (s == "p") return VarKind::MomentumBase;
  if (s == "pi") return VarKind::MomentumFiber;
  if (s == "lambda") return VarKind::Param;
  return std::nullopt;
}

std::optional<Grading> grading_name(const std::string& s) {
  if (s == "fiber") return Grading::FiberDegree;
  if (s == "lambda") return Grading::LambdaDegree;
  if (s == "base") return Grading::BaseDegree;
  return std::nullopt;
}

}  // namespace

Session::Session(SessionOptions opts) : opts_(std::move(opts)) {}
Session::Session(ChartPtr chart, SessionOptions opts) : opts_(std::move(opts)), chart_(std::move(chart)) {}
Session::~Session() = default;
Session::Session(Session&&) noexcept = default;
Session& Session::operator=(Session&&) noexcept = default;

bool Session::any_failed() const noexcept {
  for (const auto& r : reports_) {
    if (!r.pass) return true;
  }
  return false;
}

std::string Session::render(const GradedPoly& u) const {
  return opts_.format == OutputFormat::Latex ? u.latex() : u.str();
}

const ChartPtr& Session::require_chart(int line, int col) {
  if (chart_) return chart_;
  if (pending_coords_.empty()) {
    throw ScriptError(ScriptError::Kind::Semantic, line, col, "no coordinates declared");
  }
  try {
    chart_ = make_chart(pending_coords_, pending_params_);
  } catch (const std::exception& e) {
    throw ScriptError(ScriptError::Kind::Semantic, line, col, e.what());
  }
  return chart_;
}

int Session::run(std::string_view script, std::ostream& out, std::ostream& err) {
  try {
    execute(script, out);
  } catch (const ScriptError& e) {
    err << "error: line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return 2;
  }
  return any_failed() ? 1 : 0;
}

void Session::execute(std::string_view text, std::ostream& out) {
  Parser p(text);
  for (;;) {
    while (p.peek().kind == Tok::Sep) p.next();
    if (p.peek().kind == Tok::End) return;
    const std::size_t begin = p.peek().offset;
    statement(p, out);
    if (!p.at_end_of_statement()) syntax(p.peek(), "expected ';'");
    std::string stmt(text.substr(begin, p.peek().offset - begin));
    while (!stmt.empty() && std::isspace(static_cast<unsigned char>(stmt.back()))) stmt.pop_back();
    log_.push_back(std::move(stmt));
  }
}

GradedPoly Session::eval(std::string_view expr) {
  Parser p(expr);
  while (p.peek().kind == Tok::Sep) p.next();
  Node n = p.expr();
  while (p.peek().kind == Tok::Sep) p.next();
  if (p.peek().kind != Tok::End) syntax(p.peek(), "unexpected '" + p.peek().text + "'");
  return evaluate(n);
}

void Session::statement(Parser& p, std::ostream& out) {
  const Token& head = p.peek();
  if (head.kind == Tok::Ident && head.text == "coords") {
    p.next();
    if (chart_) semantic(Node{Node::Ident, "coords", {}, head.line, head.col}, "coordinates already fixed");
    do {
      if (p.at_sym(",")) p.next();
      const Token& name = p.expect_ident();
      p.expect_sym(":");
      const Token& par = p.expect_ident();
      if (par.text != "even" && par.text != "odd") syntax(par, "expected 'even' or 'odd'");
      pending_coords_.push_back({name.text, par.text == "odd" ? Parity::Odd : Parity::Even});
    } while (p.at_sym(","));
    return;
  }
  if (head.kind == Tok::Ident && head.text == "param") {
    p.next();
    if (chart_) {
      semantic(Node{Node::Ident, "param", {}, head.line, head.col}, "parameters must be declared before use");
    }
    do {
      if (p.at_sym(",")) p.next();
      pending_params_.push_back(p.expect_ident().text);
    } while (p.at_sym(","));
    return;
  }
  if (head.kind == Tok::Ident && head.text == "set") {
    p.next();
    const Token& what = p.expect_ident();
    if (what.text == "format") {
      const Token& f = p.expect_ident();
      if (f.text == "canonical") {
        opts_.format = OutputFormat::Canonical;
      } else if (f.text == "latex") {
        opts_.format = OutputFormat::Latex;
      } else {
        syntax(f, "expected 'canonical' or 'latex'");
      }
    } else if (what.text == "trunc") {
      if (p.at_ident("none")) {
        p.next();
        opts_.truncation = Truncation::none();
        return;
      }
      if (p.at_ident("default")) {
        p.next();
        opts_.truncation = Truncation::defaults();
        return;
      }
      do {
        const Token& g = p.expect_ident();
        const auto grading = grading_name(g.text);
        if (!grading) syntax(g, "expected 'fiber', 'lambda' or 'base'");
        if (p.peek().kind != Tok::Number) syntax(p.peek(), "expected order");
        opts_.truncation.set(*grading, static_cast<std::uint32_t>(std::stoul(p.next().text)));
      } while (p.peek().kind == Tok::Ident);
    } else {
      syntax(what, "expected 'trunc' or 'format'");
    }
    return;
  }
  if (head.kind == Tok::Ident && head.text == "let") {
    p.next();
    const Token& name = p.expect_ident();
    p.expect_sym("=");
    Node rhs = p.expr();
    if (!p.at_end_of_statement()) syntax(p.peek(), "expected ';'");
    const Node at{Node::Ident, name.text, {}, name.line, name.col};
    if (reserved().count(name.text)) semantic(at, "'" + name.text + "' is reserved");
    if (bindings_.count(name.text)) semantic(at, "'" + name.text + "' is already bound");
    const ChartPtr& chart = require_chart(name.line, name.col);
    if (chart->lookup(name.text)) semantic(at, "'" + name.text + "' names a chart variable");
    GradedPoly value = evaluate(rhs);
    out << name.text << " = " << render(value) << "\n";
    bindings_.emplace(name.text, std::move(value));
    return;
  }

  Node e = p.expr();
  if (!p.at_end_of_statement()) syntax(p.peek(), "expected ';'");
  if (e.kind == Node::Call && e.text.rfind("check_", 0) == 0) {
    BracketReport r = check(e);
    out << r.line() << "\n";
    reports_.push_back(std::move(r));
    return;
  }
  out << render(evaluate(e)) << "\n";
}

GradedPoly Session::evaluate(const Node& n) {
  const ChartPtr& chart = require_chart(n.line, n.col);
  try {
    switch (n.kind) {
      case Node::Num:
        return GradedPoly::constant(chart, Rational(n.text));
      case Node::Str:
        semantic(n, "string not allowed here");
      case Node::Ident: {
        if (auto it = bindings_.find(n.text); it != bindings_.end()) return it->second;
        if (auto v = chart->lookup(n.text)) return GradedPoly::variable(chart, *v);
        semantic(n, "unknown identifier '" + n.text + "'");
      }
      case Node::Neg:
        return -evaluate(n.kids[0]);
      case Node::Add:
        return evaluate(n.kids[0]) + evaluate(n.kids[1]);
      case Node::Sub:
        return evaluate(n.kids[0]) - evaluate(n.kids[1]);
      case Node::Mul:
        return evaluate(n.kids[0]) * evaluate(n.kids[1]);
      case Node::Div: {
        const GradedPoly num = evaluate(n.kids[0]);
        const GradedPoly den = evaluate(n.kids[1]);
        const Rational c = den.constant_term();
        if (den.size() > 1 || (den.size() == 1 && c == 0) || den.is_zero()) {
          semantic(n, "division by a non-constant or zero");
        }
        return num * Rational(1 / c);
      }
      case Node::Pow: {
        const unsigned long e = std::stoul(n.text);
        if (e > 64) semantic(n, "exponent too large");
        const GradedPoly b = evaluate(n.kids[0]);
        GradedPoly acc = GradedPoly::constant(chart, 1);
        for (unsigned long k = 0; k < e; ++k) acc = acc * b;
        return acc;
      }
      case Node::Call:
        if (n.text.rfind("check_", 0) == 0) semantic(n, n.text + " is a statement, not a value");
        return call(n);
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    semantic(n, e.what());
  }
  semantic(n, "bad expression");
}

GradedPoly Session::call(const Node& n) {
  const ChartPtr& chart = chart_;
  const std::string& f = n.text;
  const Truncation& t = opts_.truncation;
  auto arg = [&](std::size_t i) { return evaluate(n.kids[i]); };
  auto rest = [&](std::size_t from) {
    std::vector<GradedPoly> v;
    for (std::size_t i = from; i < n.kids.size(); ++i) v.push_back(arg(i));
    return v;
  };
  auto integer = [&](std::size_t i) -> long {
    const GradedPoly c = arg(i);
    const Rational q = c.constant_term();
    if (c.size() > 1 || (c.size() == 1 && q == 0) || q.get_den() != 1 || q < 0) {
      semantic(n.kids[i], "expected a non-negative integer");
    }
    return q.get_num().get_si();
  };
  auto word = [&](std::size_t i) -> const std::string& {
    if (n.kids[i].kind != Node::Ident) semantic(n.kids[i], "expected a name");
    return n.kids[i].text;
  };

  if (f == "schouten") return arity(n, 2, 2), schouten(arg(0), arg(1));
  if (f == "poisson") return arity(n, 2, 2), canonical_poisson(arg(0), arg(1));
  if (f == "dP") return arity(n, 2, 2), lichnerowicz(arg(0), arg(1));
  if (f == "hp") return arity(n, 1, SIZE_MAX), higher_poisson(arg(0), rest(1));
  if (f == "koszul") return arity(n, 1, SIZE_MAX), higher_koszul(arg(0), rest(1));
  if (f == "alpha") return arity(n, 1, 1), alpha(arg(0)).K;
  if (f == "d") return arity(n, 1, 1), de_rham(arg(0));
  if (f == "kappa") return arity(n, 2, 2), kappa(arg(0), arg(1));
  if (f == "euler") return arity(n, 1, 1), fiber_euler(arg(0), VarKind::AntiFiber);
  if (f == "eulerd") return arity(n, 1, 1), fiber_euler(arg(0), VarKind::Fiber);
  if (f == "trunc") return arity(n, 1, 1), truncate(arg(0), t);
  if (f == "slice") {
    arity(n, 3, 3);
    const auto g = grading_name(word(1));
    if (!g) semantic(n.kids[1], "expected 'fiber', 'lambda' or 'base'");
    return degree_slice(arg(0), *g, static_cast<std::uint32_t>(integer(2)));
  }
  if (f == "restrict") {
    arity(n, 2, SIZE_MAX);
    std::vector<VarKind> kinds;
    for (std::size_t i = 1; i < n.kids.size(); ++i) {
      const auto k = kind_name(word(i));
      if (!k) semantic(n.kids[i], "expected one of x, dx, xs, p, pi, lambda");
      kinds.push_back(*k);
    }
    return restrict(arg(0), kinds);
  }
  if (f == "legendre") return arity(n, 1, 1), legendre_transform(arg(0), t);
  if (f == "invlegendre") return arity(n, 1, 1), legendre_inverse(arg(0), t);
  if (f == "omegaprime") return arity(n, 1, 1), omega_prime(arg(0), t);
  if (f == "phi") return arity(n, 2, 2), phi_pullback(arg(0), arg(1));
  if (f == "psi") return arity(n, 2, 2), psi_pullback(arg(0), arg(1));
  if (f == "nondeg") {
    arity(n, 1, 1 + chart->dim());
    std::vector<Rational> point;
    for (std::size_t i = 1; i < n.kids.size(); ++i) {
      const GradedPoly c = arg(i);
      if (c.size() > 1 || (c.size() == 1 && c.constant_term() == 0)) semantic(n.kids[i], "expected a rational");
      point.push_back(c.constant_term());
    }
    return GradedPoly::constant(chart, hessian_nondegenerate(arg(0), point).nondegenerate ? 1 : 0);
  }
  semantic(n, "unknown function '" + f + "'");
}

BracketReport Session::check(const Node& n) {
  require_chart(n.line, n.col);
  Node c = n;
  std::string label;
  if (!c.kids.empty() && c.kids.back().kind == Node::Str) {
    label = c.kids.back().text;
    c.kids.pop_back();
  }
  const std::string& f = c.text;
  const Truncation& t = opts_.truncation;
  auto arg = [&](std::size_t i) { return evaluate(c.kids[i]); };

  BracketReport r("", chart_);
  try {
    if (f == "check_discrepancy") {
      arity(c, 1, 1);
      r = check_discrepancy(arg(0));
    } else if (f == "check_domega") {
      arity(c, 1, 1);
      r = check_domega(arg(0), t);
    } else if (f == "check_linfty") {
      arity(c, 2, 2);
      const GradedPoly N = arg(1);
      const Rational q = N.constant_term();
      if (N.size() > 1 || q.get_den() != 1 || q < 0 || q > 8) semantic(c.kids[1], "expected arity 0..8");
      r = check_linfty(arg(0), static_cast<unsigned>(q.get_num().get_ui()), t);
    } else if (f == "check_koszul") {
      arity(c, 1, 2);
      unsigned N = 3;
      if (c.kids.size() == 2) {
        const Rational q = arg(1).constant_term();
        if (q.get_den() != 1 || q < 1 || q > 6) semantic(c.kids[1], "expected arity 1..6");
        N = static_cast<unsigned>(q.get_num().get_ui());
      }
      r = check_koszul_suite(arg(0), N);
    } else if (f == "check_weight") {
      arity(c, 2, 2);
      r = check_weight_identities(arg(0), arg(1));
    } else if (f == "check_equal") {
      arity(c, 2, 2);
      const GradedPoly a = arg(0), b = arg(1);
      r = BracketReport("equal", chart_);
      r.inputs = {a.str(), b.str()};
      r.record(a - b);
    } else if (f == "check_zero") {
      arity(c, 1, 1);
      const GradedPoly a = arg(0);
      r = BracketReport("zero", chart_);
      r.inputs = {a.str()};
      r.record(a);
    } else if (f == "check_roundtrip") {
      arity(c, 1, 1);
      const GradedPoly u = arg(0);
      r = BracketReport("roundtrip", chart_);
      r.inputs = {u.str()};
      r.truncation = t;
      if (depends_on(u, VarKind::AntiFiber)) {
        r.record(truncate(legendre_inverse(legendre_transform(u, t), t) - u, t));
      } else {
        r.record(truncate(legendre_transform(legendre_inverse(u, t), t) - u, t));
      }
    } else {
      semantic(c, "unknown check '" + f + "'");
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    semantic(c, e.what());
  }
  if (!label.empty()) r.name = label;
  return r;
}

GradedPoly parse_poly(const ChartPtr& chart, std::string_view text) {
  Session s(chart);
  return s.eval(text);
}

}  // namespace superpoisson
