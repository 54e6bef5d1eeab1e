// voacheck: runs a named check suite and prints a text or json report.
// Exit status: 0 when every item has its expected verdict, 1 when one does not,
// 2 for bad flags, configuration or algebra files.

#include "algebra_spec.hpp"
#include "suite.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace voacheck;
using namespace voacheck::cli;

namespace {

IntRange parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument(flag + " expects LO:HI, got '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const int lo = std::stoi(text.substr(0, colon), &a);
    const int hi = std::stoi(text.substr(colon + 1), &b);
    if (a != colon || b != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + " expects LO:HI, got '" + text + "'");
  }
}

std::vector<IntRange> parse_window(const std::string& text) {
  std::vector<IntRange> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_range(text.substr(start, comma - start), "--window"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of vertex algebra identities"};
  SuiteConfig cfg;
  std::string c_text, z_text = "1", window_text, weights_text;
  bool list = false;
  app.add_option("--suite", cfg.suite, "suite to run");
  app.add_option("--algebra", cfg.algebra, "builtin, or a path to an algebra spec");
  app.add_option("--c", c_text, "central charge NUM/DEN");
  app.add_option("--cutoff", cfg.cutoff, "Virasoro weight cutoff");
  app.add_option("--z", z_text, "positive rational point NUM/DEN");
  app.add_option("--window", window_text, "exponent ranges LO:HI[,LO:HI[,LO:HI]] for x0, x1, x2");
  app.add_option("--weights", weights_text, "weight slices LO:HI");
  app.add_option("--degree", cfg.degree, "PBW degree bound for induced modules");
  app.add_option("--report", cfg.report, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_flag("--list", list, "list the suites and exit");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& s : suite_names()) std::cout << s << "\n";
    return 0;
  }
  try {
    if (cfg.suite.empty()) throw std::invalid_argument("--suite is required (see --list)");
    if (!c_text.empty()) {
      cfg.c = parse_scalar(c_text);
      cfg.c_given = true;
    }
    cfg.z = parse_scalar(z_text);
    if (!window_text.empty()) cfg.window = parse_window(window_text);
    if (!weights_text.empty()) cfg.weights = parse_range(weights_text, "--weights");
    validate_config(cfg);
    const SuiteResult r = run_suite(cfg);
    std::cout << (cfg.report == "json" ? json_report(cfg, r) : text_report(cfg, r));
    return r.ok() ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "algebra spec syntax error at " << e.what() << "\n";
  } catch (const SpecError& e) {
    std::cerr << "algebra spec violates an axiom: " << e.what() << "\n";
    for (const auto& v : e.violations) std::cerr << "  " << v.axiom << ": " << v.detail << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
