#include "thinville/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thinville/beauville.hpp"

namespace thinville {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("bad " + what + " '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string power_string(int p, int k) { return std::to_string(p) + "^" + std::to_string(k); }

const char* bool_string(bool b) { return b ? "true" : "false"; }

std::string beauville_verdict(const PcGroup& g, const std::string& expected, std::uint64_t budget) {
  if (expected == "refuted" && agemo(g, budget).log_order() == 1 && omega_negative_test(g, budget))
    return "refuted";
  SearchOptions o;
  o.budget = budget;
  if (expected == "found") {
    o.mode = SearchMode::guided;
    auto c = find_beauville_structure(g, o);
    if (c.outcome == Outcome::found) return "found";
  }
  o.mode = SearchMode::exhaustive;
  return to_string(find_beauville_structure(g, o).outcome);
}

}  // namespace

const Expectation* CatalogEntry::find(const std::string& key) const {
  for (const auto& e : expectations)
    if (e.key == key) return &e;
  return nullptr;
}

bool is_builtin(const std::string& id) {
  try {
    builtin(id);
    return true;
  } catch (const Error&) {
    return false;
  }
}

PcPresentation builtin(const std::string& id) {
  const auto parts = split(id, '-');
  auto prime = [&](const std::string& s) {
    const int p = parse_int(s, "prime");
    if (p < 3 || !is_prime(p)) throw Error("builtin '" + id + "': odd prime expected");
    return p;
  };
  if (parts.size() == 2 && parts[0] == "elab") return PcPresentation(prime(parts[1]), 2);
  if (parts.size() == 2 && parts[0] == "heisenberg") {
    PcPresentation pres(prime(parts[1]), 3);
    pres.set_commutator(2, 1, {{3, 1}});
    return pres;
  }
  if (parts.size() == 3 && parts[0] == "cpk2") {
    const int p = prime(parts[1]);
    const int k = parse_int(parts[2], "exponent");
    if (k < 1 || 2 * k > kMaxRank) throw Error("builtin '" + id + "': exponent out of range");
    // g_{2i-1}, g_{2i} are the i-th layers of the two cyclic factors.
    PcPresentation pres(p, 2 * k);
    for (int i = 1; i + 2 <= 2 * k; ++i) pres.set_power(i, {{i + 2, 1}});
    return pres;
  }
  throw Error("unknown builtin '" + id + "'");
}

CatalogEntry builtin_entry(const std::string& id) {
  CatalogEntry e;
  e.id = id;
  e.source = "builtin";
  e.provenance = "builtin construction";
  e.presentation = builtin(id);
  return e;
}

std::vector<std::string> check_expectations(const CatalogEntry& entry, const PcGroup& g, bool deep,
                                            std::uint64_t budget) {
  std::vector<std::string> bad;
  const int p = g.prime();
  for (const auto& e : entry.expectations) {
    std::string actual;
    if (e.key == "order") {
      actual = power_string(p, g.rank());
    } else if (e.key == "class") {
      actual = std::to_string(nilpotency_class(g));
    } else if (e.key == "center") {
      actual = power_string(p, center(g).log_order());
    } else if (e.key == "metabelian") {
      actual = bool_string(is_metabelian(g));
    } else if (e.key == "maximal-class") {
      actual = bool_string(is_maximal_class(g));
    } else if (e.key == "thin") {
      actual = bool_string(is_thin(g).thin);
    } else if (e.key == "beauville" || e.key == "case" || e.key == "exponent-p-maximal") {
      if (!deep) continue;
      if (e.key == "beauville") {
        actual = beauville_verdict(g, e.value, budget);
      } else if (e.key == "case") {
        actual = to_string(classify_theorem_a(g, budget).tag);
      } else {
        actual = std::to_string(count_exponent_p_maximal(g, budget));
      }
    } else {
      bad.push_back(e.key + ": unknown expectation");
      continue;
    }
    if (actual != e.value) bad.push_back(e.key + ": expected " + e.value + ", got " + actual);
  }
  return bad;
}

CatalogEntry ingest_text(const std::string& text, const std::string& source,
                         const IngestOptions& options) {
  CatalogEntry entry;
  entry.source = source;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("#@", 0) != 0) continue;
    std::istringstream fields(line.substr(2));
    std::string directive;
    fields >> directive;
    std::string rest;
    std::getline(fields, rest);
    rest = trim(rest);
    if (directive == "id") {
      entry.id = rest;
    } else if (directive == "source") {
      entry.provenance = rest;
    } else if (directive == "recipe") {
      entry.recipe = rest;
    } else if (directive == "expect") {
      std::istringstream ef(rest);
      Expectation e;
      ef >> e.key >> e.value >> e.tag;
      if (e.tag != "[PAPER]" && e.tag != "[DERIVED]")
        throw ParseError("line " + std::to_string(line_no) + ": expectation without [PAPER] or [DERIVED] tag");
      e.tag = e.tag.substr(1, e.tag.size() - 2);
      entry.expectations.push_back(e);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown directive '" + directive + "'");
    }
  }
  entry.presentation = parse_presentation(text);
  if (entry.id.empty()) entry.id = std::filesystem::path(source).stem().string();
  const auto report = check_consistency(entry.presentation);
  if (!report.consistent)
    throw Error(entry.id + ": inconsistent presentation (" + std::to_string(report.failures.size()) +
                " failing overlaps)");
  PcGroup g(entry.presentation);
  const auto bad = check_expectations(entry, g, options.deep, options.budget);
  if (!bad.empty()) {
    std::string msg = entry.id + ": expectation mismatch";
    for (const auto& b : bad) msg += "; " + b;
    throw Error(msg);
  }
  return entry;
}

CatalogEntry ingest(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ingest_text(ss.str(), path, options);
}

std::string catalog_directory() {
  if (const char* env = std::getenv("THINVILLE_CATALOG"); env && *env) return env;
#ifdef THINVILLE_CATALOG_DIR
  return THINVILLE_CATALOG_DIR;
#else
  return "catalog";
#endif
}

std::vector<CatalogEntry> load_catalog(const std::string& directory, const IngestOptions& options) {
  std::vector<std::string> paths;
  for (const auto& f : std::filesystem::directory_iterator(directory))
    if (f.is_regular_file() && f.path().extension() == ".pc") paths.push_back(f.path().string());
  std::vector<CatalogEntry> out;
  for (const auto& path : paths) out.push_back(ingest(path, options));
  std::sort(out.begin(), out.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
  return out;
}

CatalogEntry resolve(const std::string& target, const IngestOptions& options) {
  if (is_builtin(target)) return builtin_entry(target);
  if (std::filesystem::is_regular_file(target)) return ingest(target, options);
  const auto path = std::filesystem::path(catalog_directory()) / (target + ".pc");
  if (std::filesystem::is_regular_file(path)) return ingest(path.string(), options);
  throw Error("unknown target '" + target + "'");
}

}  // namespace thinville
