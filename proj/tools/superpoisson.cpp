#include "superpoisson/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace sp = superpoisson;

namespace {

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int repl(sp::Session& s) {
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    try {
      s.execute(line, std::cout);
    } catch (const sp::ScriptError& e) {
      std::cout << "error: column " << e.column() << ": " << e.what() << "\n";
    }
  }
  std::cout << "\n";
  return s.any_failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic calculus for higher Poisson brackets and fiberwise Legendre transforms"};
  app.require_subcommand(1);

  int trunc_fiber = 6, trunc_lambda = 2, trunc_base = 4;
  std::string format = "canonical";
  app.add_option("--trunc-fiber", trunc_fiber, "Fiber degree cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--trunc-lambda", trunc_lambda, "Parameter degree cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--trunc-base", trunc_base, "Base degree cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"canonical", "latex"}));

  std::string script, report, json;
  auto* run = app.add_subcommand("run", "Run a script");
  run->add_option("script", script, "Script file")->required();
  auto* check = app.add_subcommand("check", "Run a script and write its check reports");
  check->add_option("script", script, "Script file")->required();
  check->add_option("--report", report, "Report file (one CHECK line per check)")->required();
  check->add_option("--json", json, "Also write JSON lines");
  auto* repl_cmd = app.add_subcommand("repl", "Interactive session");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  sp::SessionOptions opts;
  opts.truncation = sp::Truncation{};
  opts.truncation.set(sp::Grading::FiberDegree, static_cast<std::uint32_t>(trunc_fiber));
  opts.truncation.set(sp::Grading::LambdaDegree, static_cast<std::uint32_t>(trunc_lambda));
  opts.truncation.set(sp::Grading::BaseDegree, static_cast<std::uint32_t>(trunc_base));
  opts.format = format == "latex" ? sp::OutputFormat::Latex : sp::OutputFormat::Canonical;
  sp::Session session(opts);

  if (repl_cmd->parsed()) return repl(session);

  std::string text;
  if (!slurp(script, text)) {
    std::cerr << "error: cannot read " << script << "\n";
    return 2;
  }
  const int rc = session.run(text, std::cout, std::cerr);
  if (check->parsed()) {
    std::ofstream rep(report);
    if (!rep) {
      std::cerr << "error: cannot write " << report << "\n";
      return 2;
    }
    for (const auto& r : session.reports()) rep << r.line() << "\n";
    if (!json.empty()) {
      std::ofstream js(json);
      for (const auto& r : session.reports()) js << r.json() << "\n";
    }
  }
  return rc;
}
