// Command line front end.
//   thinville analyze <target> [--exhaustive|--guided|--no-search] [--json]
//   thinville beauville <target> [--exhaustive|--guided] [--budget N] [--json]
//   thinville lattice <target> [--dot]
//   thinville formulas --p P
//   thinville verify-theorems --suite {p3,p5,formulas} [--p P]
// Exit codes: 0 success, 1 failed check, 2 usage error, 3 inconclusive where
// a definite answer was required. THINVILLE_BUDGET overrides the default
// enumeration budget.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "thinville/report.hpp"

using namespace thinville;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, inconclusive = 3 };

std::uint64_t default_budget() {
  if (const char* env = std::getenv("THINVILLE_BUDGET"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring THINVILLE_BUDGET='" << env << "'\n";
    }
  }
  return kDefaultBudget;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CatalogEntry load(const std::string& target, std::uint64_t budget) {
  IngestOptions o;
  o.budget = budget;
  try {
    return resolve(target, o);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("unknown", 0) == 0) throw UsageError(e.what());
    throw;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite p-group engine and Beauville structure analyzer"};
  app.require_subcommand(1);
  std::uint64_t budget = default_budget();
  app.add_option("--budget", budget, "Enumeration budget (elements)");

  std::string target;
  bool json = false, exhaustive = false, guided = false, no_search = false, dot = false;
  int prime = 0;
  std::string suite;

  auto* analyze_cmd = app.add_subcommand("analyze", "Structural report of a group");
  analyze_cmd->add_option("target", target, "Builtin id, catalog id or presentation file")->required();
  analyze_cmd->add_flag("--json", json, "Flat key=value output");
  analyze_cmd->add_flag("--exhaustive", exhaustive, "Exhaustive Beauville search");
  analyze_cmd->add_flag("--guided", guided, "Guided Beauville search only");
  analyze_cmd->add_flag("--no-search", no_search, "Skip the Beauville search");
  analyze_cmd->add_option("--budget", budget, "Enumeration budget (elements)");

  auto* beauville_cmd = app.add_subcommand("beauville", "Search for a Beauville structure");
  beauville_cmd->add_option("target", target, "Builtin id, catalog id or presentation file")->required();
  beauville_cmd->add_flag("--exhaustive", exhaustive, "Enumerate every generating triple up to conjugacy");
  beauville_cmd->add_flag("--guided", guided, "Constructive choices, then random trials");
  beauville_cmd->add_option("--budget", budget, "Enumeration budget (elements)");
  beauville_cmd->add_flag("--json", json, "Flat key=value output");

  auto* lattice_cmd = app.add_subcommand("lattice", "Normal subgroup lattice profile");
  lattice_cmd->add_option("target", target, "Builtin id, catalog id or presentation file")->required();
  lattice_cmd->add_flag("--dot", dot, "DOT graph of the lattice");
  lattice_cmd->add_option("--budget", budget, "Enumeration budget (elements)");

  auto* formulas_cmd = app.add_subcommand("formulas", "Check the binomial and power identities at one prime");
  formulas_cmd->add_option("--p", prime, "Odd prime")->required();

  auto* verify_cmd = app.add_subcommand("verify-theorems", "Run a reproduction suite");
  verify_cmd->add_option("--suite", suite, "p3, p5 or formulas")
      ->required()
      ->check(CLI::IsMember({"p3", "p5", "formulas"}));
  verify_cmd->add_option("--p", prime, "Prime for the formulas suite (default 3 5 7 11 13)");
  verify_cmd->add_option("--budget", budget, "Enumeration budget (elements)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  if (exhaustive && guided) {
    std::cerr << "error: --exhaustive and --guided are exclusive\n";
    return usage;
  }

  try {
    if (analyze_cmd->parsed()) {
      const auto entry = load(target, budget);
      PcGroup g(entry.presentation);
      AnalyzeOptions o;
      o.budget = budget;
      o.beauville = no_search    ? BeauvilleMode::skip
                    : exhaustive ? BeauvilleMode::exhaustive
                    : guided     ? BeauvilleMode::guided
                                 : BeauvilleMode::automatic;
      const auto r = analyze(g, entry.id, o);
      std::cout << (json ? format_flat(r) : format_text(r));
      if (r.place_of_agemo && !r.place_of_agemo->all_pass()) return failed;
      return ok;
    }
    if (beauville_cmd->parsed()) {
      const auto entry = load(target, budget);
      PcGroup g(entry.presentation);
      BeauvilleCertificate cert;
      if (exhaustive || guided) {
        SearchOptions o;
        o.budget = budget;
        o.mode = exhaustive ? SearchMode::exhaustive : SearchMode::guided;
        cert = find_beauville_structure(g, o);
      } else {
        cert = automatic_search(g, budget);
      }
      if (json) {
        std::cout << "target=" << entry.id << "\n" << format_flat(cert);
      } else {
        std::cout << entry.id << ": " << format_text(cert);
      }
      if (cert.outcome == Outcome::found && !verify_certificate(g, cert)) return failed;
      if (cert.outcome == Outcome::inconclusive && !guided) return inconclusive;
      return ok;
    }
    if (lattice_cmd->parsed()) {
      const auto entry = load(target, budget);
      PcGroup g(entry.presentation);
      if (dot) {
        std::cout << lattice_dot(g, budget);
      } else {
        const auto prof = lattice_profile(g, budget);
        std::cout << entry.id << ": " << format_profile(prof) << "\n";
        std::cout << prof.normal_subgroup_count << " normal subgroups, ends with chain "
                  << (prof.ends_with_chain ? "true" : "false") << ", thin shape "
                  << (prof.matches_thin_shape ? "true" : "false") << "\n";
      }
      return ok;
    }
    if (formulas_cmd->parsed()) {
      if (prime < 3 || !is_prime(prime)) throw UsageError("--p must be an odd prime");
      const auto r = formulas_suite(prime);
      std::cout << r.format();
      return r.failed() ? failed : ok;
    }
    if (verify_cmd->parsed()) {
      std::vector<SuiteResult> results;
      if (suite == "formulas") {
        if (prime && (prime < 3 || !is_prime(prime))) throw UsageError("--p must be an odd prime");
        for (int p : prime ? std::vector<int>{prime} : std::vector<int>{3, 5, 7, 11, 13})
          results.push_back(formulas_suite(p));
      } else if (suite == "p3") {
        results.push_back(p3_suite(catalog_directory(), budget));
      } else {
        results.push_back(p5_suite(catalog_directory(), budget));
      }
      bool any_failed = false, any_open = false;
      for (const auto& r : results) {
        std::cout << r.format();
        any_failed |= r.failed();
        any_open |= r.inconclusive();
      }
      return any_failed ? failed : any_open ? inconclusive : ok;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return inconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return usage;
}
