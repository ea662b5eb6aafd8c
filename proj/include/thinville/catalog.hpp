// Builtin groups and presentation files with expectation headers.
//
// A catalog file is a presentation file whose comment lines may carry
// directives:
//   #@ id <identifier>
//   #@ source <command that produced the file>
//   #@ recipe <free text>
//   #@ expect <key> <value> [PAPER|DERIVED]
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thinville/structure.hpp"

namespace thinville {

struct Expectation {
  std::string key;
  std::string value;
  std::string tag;  // PAPER or DERIVED
};

struct CatalogEntry {
  std::string id;
  std::string source;  // "builtin" or the file path
  std::string provenance;
  std::string recipe;
  std::vector<Expectation> expectations;
  PcPresentation presentation{3, 1};

  const Expectation* find(const std::string& key) const;
};

/// elab-<p>, cpk2-<p>-<k>, heisenberg-<p>.
bool is_builtin(const std::string& id);
PcPresentation builtin(const std::string& id);
CatalogEntry builtin_entry(const std::string& id);

struct IngestOptions {
  /// Also check the beauville, case and exponent-p-maximal expectations.
  bool deep = false;
  std::uint64_t budget = kDefaultBudget;
};

/// Parses, checks consistency and evaluates the expectations; any mismatch
/// throws Error.
CatalogEntry ingest_text(const std::string& text, const std::string& source,
                         const IngestOptions& options = {});
CatalogEntry ingest(const std::string& path, const IngestOptions& options = {});

/// Mismatches as "key: expected X, got Y"; keys that are not understood are
/// reported as well.
std::vector<std::string> check_expectations(const CatalogEntry& entry, const PcGroup& g, bool deep,
                                            std::uint64_t budget = kDefaultBudget);

/// Directory holding the shipped catalog files (THINVILLE_CATALOG env var,
/// then the compiled-in default).
std::string catalog_directory();

/// Every *.pc file of a directory, sorted by id.
std::vector<CatalogEntry> load_catalog(const std::string& directory,
                                       const IngestOptions& options = {});

/// A builtin id, a path to a presentation file, or the id of a file in the
/// catalog directory.
CatalogEntry resolve(const std::string& target, const IngestOptions& options = {});

}  // namespace thinville
