// Analysis reports, certificate formatting and the reproduction suites.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thinville/beauville.hpp"
#include "thinville/catalog.hpp"
#include "thinville/congruence.hpp"

namespace thinville {

enum class BeauvilleMode { automatic, exhaustive, guided, skip };

struct AnalyzeOptions {
  std::uint64_t budget = kDefaultBudget;
  /// automatic: guided search, then exhaustive when that is inconclusive.
  BeauvilleMode beauville = BeauvilleMode::automatic;
};

struct AnalysisReport {
  std::string target;
  int prime = 0;
  int log_order = 0;
  int nilpotency_class = 0;
  std::vector<int> widths;
  bool metabelian = false;
  bool maximal_class = false;
  bool thin = false;
  std::string thin_reason;
  int center_log_order = 0;
  int agemo_log_order = 0;
  std::optional<PlaceOfAgemoReport> place_of_agemo;
  std::optional<LatticeProfile> lattice;
  int exponent_p_maximal = -1;
  TheoremACase theorem_a;
  std::optional<BeauvilleCertificate> beauville;
};

AnalysisReport analyze(const PcGroup& g, const std::string& target, const AnalyzeOptions& options = {});

/// Guided then exhaustive, as in AnalyzeOptions::automatic.
BeauvilleCertificate automatic_search(const PcGroup& g, std::uint64_t budget);

std::string format_text(const AnalysisReport& r);
/// One key=value pair per line.
std::string format_flat(const AnalysisReport& r);

std::string format_text(const BeauvilleCertificate& c);
std::string format_flat(const BeauvilleCertificate& c);

std::string format_profile(const LatticeProfile& profile);

struct SuiteLine {
  std::string label;
  std::string status;  // pass, fail, inconclusive
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<SuiteLine> lines;

  void add(std::string label, bool ok, std::string detail = {});
  void add_inconclusive(std::string label, std::string detail = {});
  bool failed() const;
  bool inconclusive() const;
  std::string format() const;
};

/// Every identity of the congruence module at one prime.
SuiteResult formulas_suite(int p);
/// Which metabelian thin 3-groups of the catalog directory are Beauville, plus
/// the abelian group of order 9.
SuiteResult p3_suite(const std::string& catalog_dir, std::uint64_t budget = kDefaultBudget);
/// Case classification against the search outcome on the 5-group catalog entries.
SuiteResult p5_suite(const std::string& catalog_dir, std::uint64_t budget = kDefaultBudget);

}  // namespace thinville
