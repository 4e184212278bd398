#ifndef SUPERPOISSON_CLI_HPP
#define SUPERPOISSON_CLI_HPP

#include "superpoisson/verify.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superpoisson {

/// Syntax or semantic error with a 1-based source position.
class ScriptError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };
  ScriptError(Kind kind, int line, int column, const std::string& msg);

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

enum class OutputFormat { Canonical, Latex };

struct SessionOptions {
  Truncation truncation = Truncation::defaults();
  OutputFormat format = OutputFormat::Canonical;
};

struct Node;

class Session {
 public:
  explicit Session(SessionOptions opts = {});
  /// A session whose chart is already fixed.
  Session(ChartPtr chart, SessionOptions opts = {});
  ~Session();
  Session(Session&&) noexcept;
  Session& operator=(Session&&) noexcept;

  /// Runs every statement. Returns 0 on success, 1 if any check failed, 2 on the first
  /// syntax or semantic error (which stops the run).
  int run(std::string_view script, std::ostream& out, std::ostream& err);

  /// Executes statements, throwing ScriptError on the first error.
  void execute(std::string_view text, std::ostream& out);

  /// Evaluates one expression without binding it.
  GradedPoly eval(std::string_view expr);

  const ChartPtr& chart() const noexcept { return chart_; }
  const std::map<std::string, GradedPoly>& bindings() const noexcept { return bindings_; }
  const std::vector<BracketReport>& reports() const noexcept { return reports_; }
  const std::vector<std::string>& log() const noexcept { return log_; }
  const SessionOptions& options() const noexcept { return opts_; }
  bool any_failed() const noexcept;

  std::string render(const GradedPoly& u) const;

 private:
  struct Parser;

  void statement(Parser& p, std::ostream& out);
  const ChartPtr& require_chart(int line, int col);
  GradedPoly evaluate(const Node& n);
  GradedPoly call(const Node& n);
  BracketReport check(const Node& n);

  SessionOptions opts_;
  std::vector<Coordinate> pending_coords_;
  std::vector<std::string> pending_params_;
  ChartPtr chart_;
  std::map<std::string, GradedPoly> bindings_;
  std::vector<BracketReport> reports_;
  std::vector<std::string> log_;
};

/// Parses a polynomial in the chart's variables (the canonical text form).
GradedPoly parse_poly(const ChartPtr& chart, std::string_view text);

}  // namespace superpoisson

#endif  // SUPERPOISSON_CLI_HPP
