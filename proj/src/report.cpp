#include "thinville/report.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

namespace thinville {

namespace {

std::string power_string(int p, int k) { return std::to_string(p) + "^" + std::to_string(k); }
const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string digits(const GroupElement& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) s += static_cast<char>('0' + g[i]);
  return s;
}

std::string orders_string(const GeneratingTriple& t) {
  return std::to_string(t.orders[0]) + " " + std::to_string(t.orders[1]) + " " +
         std::to_string(t.orders[2]);
}

void triple_lines(std::ostringstream& out, const char* name, const GeneratingTriple& t,
                  const SigmaFingerprint& f, bool flat) {
  if (flat) {
    out << name << "_x=" << digits(t.x) << "\n";
    out << name << "_y=" << digits(t.y) << "\n";
    out << name << "_xy=" << digits(t.xy) << "\n";
    out << name << "_orders=" << orders_string(t) << "\n";
    out << name << "_socles=" << f.socles.size() << "\n";
  } else {
    out << "  " << name << ": x=" << to_string(t.x) << " y=" << to_string(t.y)
        << " xy=" << to_string(t.xy) << "\n";
    out << "    orders " << orders_string(t) << ", " << f.socles.size() << " socles\n";
  }
}

bool two_generator(const PcGroup& g) { return frattini(g).log_order() == g.rank() - 2; }

std::string case_string(const TheoremACase& c) {
  std::string s = to_string(c.tag);
  if (c.tag == TheoremACaseTag::A4) s += " (" + std::to_string(c.exponent_p_maximal) + " of exponent p)";
  return s;
}

}  // namespace

BeauvilleCertificate automatic_search(const PcGroup& g, std::uint64_t budget) {
  SearchOptions o;
  o.budget = budget;
  o.mode = SearchMode::guided;
  auto guided = find_beauville_structure(g, o);
  if (guided.outcome != Outcome::inconclusive) return guided;
  o.mode = SearchMode::exhaustive;
  return find_beauville_structure(g, o);
}

AnalysisReport analyze(const PcGroup& g, const std::string& target, const AnalyzeOptions& options) {
  AnalysisReport r;
  r.target = target;
  r.prime = g.prime();
  r.log_order = g.rank();
  const auto lcs = lower_central_series(g);
  r.nilpotency_class = static_cast<int>(lcs.terms.size()) - 1;
  r.widths = lcs.widths;
  r.metabelian = is_metabelian(g);
  r.maximal_class = is_maximal_class(g);
  const auto thin = is_thin(g);
  r.thin = thin.thin;
  r.thin_reason = thin.reason;
  r.center_log_order = center(g).log_order();
  r.agemo_log_order = agemo(g, options.budget).log_order();
  if (r.thin && r.metabelian && !r.maximal_class && r.nilpotency_class >= 2)
    r.place_of_agemo = verify_place_of_agemo(g, options.budget);
  if (r.thin) {
    try {
      r.lattice = lattice_profile(g, options.budget);
    } catch (const BudgetExceeded&) {
    }
  }
  const bool pair = two_generator(g);
  if (pair) r.exponent_p_maximal = count_exponent_p_maximal(g, options.budget);
  r.theorem_a = classify_theorem_a(g, options.budget);
  if (pair && options.beauville != BeauvilleMode::skip) {
    if (options.beauville == BeauvilleMode::automatic) {
      r.beauville = automatic_search(g, options.budget);
    } else {
      SearchOptions o;
      o.budget = options.budget;
      o.mode = options.beauville == BeauvilleMode::exhaustive ? SearchMode::exhaustive : SearchMode::guided;
      r.beauville = find_beauville_structure(g, o);
    }
  }
  return r;
}

std::string format_profile(const LatticeProfile& profile) {
  std::string s;
  for (const auto& l : profile.layers) {
    if (!s.empty()) s += " ";
    s += std::to_string(l.width) + ":" + std::to_string(l.count) + ":" + to_string(l.shape);
  }
  return s;
}

std::string format_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "target         " << r.target << "\n";
  out << "order          " << power_string(r.prime, r.log_order) << "\n";
  out << "class          " << r.nilpotency_class << "\n";
  out << "widths         " << join(r.widths, " ") << "\n";
  out << "metabelian     " << yes_no(r.metabelian) << "\n";
  out << "maximal class  " << yes_no(r.maximal_class) << "\n";
  out << "thin           " << yes_no(r.thin);
  if (!r.thin) out << " (" << r.thin_reason << ")";
  out << "\n";
  out << "center         " << power_string(r.prime, r.center_log_order) << "\n";
  out << "G^p            " << power_string(r.prime, r.agemo_log_order) << "\n";
  if (r.place_of_agemo) {
    out << "place of G^p   l=" << r.place_of_agemo->l << " "
        << (r.place_of_agemo->all_pass() ? "pass" : "FAIL") << "\n";
  }
  if (r.lattice) {
    out << "lattice        " << format_profile(*r.lattice) << "\n";
    out << "               " << r.lattice->normal_subgroup_count << " normal subgroups"
        << (r.lattice->ends_with_chain ? ", ends with a chain" : "") << "\n";
  }
  if (r.exponent_p_maximal >= 0) out << "exp-p maximal  " << r.exponent_p_maximal << "\n";
  out << "case           " << case_string(r.theorem_a);
  if (r.theorem_a.tag != TheoremACaseTag::out_of_scope)
    out << ", predicted " << (r.theorem_a.predicted_beauville ? "Beauville" : "not Beauville");
  else if (!r.theorem_a.note.empty())
    out << " (" << r.theorem_a.note << ")";
  out << "\n";
  if (r.beauville) out << "Beauville      " << format_text(*r.beauville);
  return out.str();
}

std::string format_flat(const AnalysisReport& r) {
  std::ostringstream out;
  out << "target=" << r.target << "\n";
  out << "prime=" << r.prime << "\n";
  out << "log_order=" << r.log_order << "\n";
  out << "class=" << r.nilpotency_class << "\n";
  out << "widths=" << join(r.widths, ",") << "\n";
  out << "metabelian=" << yes_no(r.metabelian) << "\n";
  out << "maximal_class=" << yes_no(r.maximal_class) << "\n";
  out << "thin=" << yes_no(r.thin) << "\n";
  if (!r.thin) out << "thin_reason=" << r.thin_reason << "\n";
  out << "center_log_order=" << r.center_log_order << "\n";
  out << "agemo_log_order=" << r.agemo_log_order << "\n";
  if (r.place_of_agemo) {
    out << "place_l=" << r.place_of_agemo->l << "\n";
    out << "place_pass=" << yes_no(r.place_of_agemo->all_pass()) << "\n";
  }
  if (r.lattice) {
    out << "lattice=" << format_profile(*r.lattice) << "\n";
    out << "lattice_normal_subgroups=" << r.lattice->normal_subgroup_count << "\n";
    out << "lattice_ends_with_chain=" << yes_no(r.lattice->ends_with_chain) << "\n";
  }
  if (r.exponent_p_maximal >= 0) out << "exponent_p_maximal=" << r.exponent_p_maximal << "\n";
  out << "case=" << to_string(r.theorem_a.tag) << "\n";
  out << "case_predicts_beauville=" << yes_no(r.theorem_a.predicted_beauville) << "\n";
  if (r.beauville) out << format_flat(*r.beauville);
  return out.str();
}

std::string format_text(const BeauvilleCertificate& c) {
  std::ostringstream out;
  out << to_string(c.outcome) << " (" << to_string(c.mode);
  if (!c.reason.empty()) out << ", " << c.reason;
  out << ")\n";
  if (c.first && c.second) {
    triple_lines(out, "triple 1", *c.first, c.first_fingerprint, false);
    triple_lines(out, "triple 2", *c.second, c.second_fingerprint, false);
  }
  out << "  pairs examined " << c.stats.pairs_examined << ", fingerprints " << c.stats.fingerprints
      << ", comparisons " << c.stats.comparisons << "\n";
  return out.str();
}

std::string format_flat(const BeauvilleCertificate& c) {
  std::ostringstream out;
  out << "beauville=" << to_string(c.outcome) << "\n";
  out << "beauville_mode=" << to_string(c.mode) << "\n";
  if (!c.reason.empty()) out << "beauville_reason=" << c.reason << "\n";
  if (c.first && c.second) {
    triple_lines(out, "triple1", *c.first, c.first_fingerprint, true);
    triple_lines(out, "triple2", *c.second, c.second_fingerprint, true);
  }
  out << "pairs_examined=" << c.stats.pairs_examined << "\n";
  out << "fingerprints=" << c.stats.fingerprints << "\n";
  return out.str();
}

void SuiteResult::add(std::string label, bool ok, std::string detail) {
  lines.push_back({std::move(label), ok ? "pass" : "fail", std::move(detail)});
}

void SuiteResult::add_inconclusive(std::string label, std::string detail) {
  lines.push_back({std::move(label), "inconclusive", std::move(detail)});
}

bool SuiteResult::failed() const {
  return std::any_of(lines.begin(), lines.end(), [](const SuiteLine& l) { return l.status == "fail"; });
}

bool SuiteResult::inconclusive() const {
  return std::any_of(lines.begin(), lines.end(),
                     [](const SuiteLine& l) { return l.status == "inconclusive"; });
}

std::string SuiteResult::format() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& l : lines) width = std::max(width, l.label.size());
  int pass = 0, fail = 0, open = 0;
  for (const auto& l : lines) {
    out << (l.status == "pass" ? "PASS  " : l.status == "fail" ? "FAIL  " : "INCON ") << l.label;
    if (!l.detail.empty()) out << std::string(width - l.label.size() + 2, ' ') << l.detail;
    out << "\n";
    (l.status == "pass" ? pass : l.status == "fail" ? fail : open)++;
  }
  out << name << ": " << pass << " passed, " << fail << " failed, " << open << " inconclusive\n";
  return out.str();
}

SuiteResult formulas_suite(int p) {
  SuiteResult s;
  s.name = "formulas p=" + std::to_string(p);
  auto summary = [](const IdentityReport& r) {
    std::string d = std::to_string(r.checked) + " cases";
    if (!r.passed()) d += ", " + std::to_string(r.mismatches.size()) + " mismatches";
    return d;
  };
  const auto closed = cij_closed_form_check(p);
  s.add("C(i,j) closed form", closed.passed(), summary(closed));
  const auto nr = quadratic_nonresidues(p);
  s.add("quadratic non-residues", static_cast<int>(nr.size()) == (p - 1) / 2, join(nr, " "));
  const auto geo = geometric_sum_check(p);
  s.add("geometric sum 2/(1-ht^2)", geo.passed(), summary(geo));
  return s;
}

namespace {

std::vector<CatalogEntry> entries_for_prime(const std::string& dir, int p) {
  std::vector<CatalogEntry> out;
  for (auto& e : load_catalog(dir))
    if (e.presentation.prime() == p) out.push_back(std::move(e));
  return out;
}

std::string expected(const CatalogEntry& e, const std::string& key) {
  const auto* x = e.find(key);
  return x ? x->value : "";
}

}  // namespace

SuiteResult p3_suite(const std::string& catalog_dir, std::uint64_t budget) {
  SuiteResult s;
  s.name = "p3";
  SearchOptions exhaustive;
  exhaustive.mode = SearchMode::exhaustive;
  exhaustive.budget = budget;

  auto entries = entries_for_prime(catalog_dir, 3);
  entries.insert(entries.begin(), builtin_entry("elab-3"));
  std::set<std::string> beauville_thin;
  const std::set<std::string> named{"sg-3_5-3", "sg-3_6-34", "sg-3_6-37"};
  bool saw40 = false;
  for (const auto& e : entries) {
    PcGroup g(e.presentation);
    const bool metabelian = is_metabelian(g);
    const bool thin = is_thin(g).thin;
    if (e.id == "sg-3_6-40") {
      saw40 = true;
      const int z = center(g).log_order();
      s.add(e.id + " not thin, |Z| = 9", !thin && z == 2,
            std::string("thin=") + yes_no(thin) + " |Z|=" + power_string(3, z));
      continue;
    }
    if (!metabelian || !thin || is_maximal_class(g)) {
      s.add(e.id + " metabelian thin", false, "not a metabelian thin group outside maximal class");
      continue;
    }
    const auto cert = find_beauville_structure(g, exhaustive);
    const std::string verdict = to_string(cert.outcome);
    if (cert.outcome == Outcome::inconclusive) {
      s.add_inconclusive(e.id + " exhaustive search", cert.reason);
      continue;
    }
    const bool want = named.count(e.id) > 0;
    if (cert.outcome == Outcome::found) {
      beauville_thin.insert(e.id);
      s.add(e.id + " Beauville", want && verify_certificate(g, cert),
            "found, order 3^" + std::to_string(g.rank()) + ", certificate re-verified");
    } else {
      s.add(e.id + " not Beauville", !want, "refuted (" + cert.reason + ")");
    }
  }
  s.add("sg-3_6-40 present", saw40);
  std::string list;
  for (const auto& id : beauville_thin) list += (list.empty() ? "" : " ") + id;
  s.add("Beauville metabelian thin 3-groups", beauville_thin == named, list);
  return s;
}

SuiteResult p5_suite(const std::string& catalog_dir, std::uint64_t budget) {
  SuiteResult s;
  s.name = "p5";
  std::set<std::string> covered;
  for (const auto& e : entries_for_prime(catalog_dir, 5)) {
    const std::string want_case = expected(e, "case");
    if (want_case.empty()) continue;
    PcGroup g(e.presentation);
    const auto tc = classify_theorem_a(g, budget);
    const std::string got = case_string(tc);
    if (to_string(tc.tag) != want_case) {
      s.add(e.id + " case", false, "expected " + want_case + ", got " + got);
      continue;
    }
    if (tc.predicted_beauville) {
      SearchOptions o;
      o.mode = SearchMode::guided;
      o.budget = budget;
      const auto cert = find_beauville_structure(g, o);
      if (cert.outcome == Outcome::found) {
        const bool ok = verify_certificate(g, cert);
        s.add(e.id + " " + got, ok, "predicted Beauville; guided search found, certificate re-verified");
        if (ok) covered.insert(tc.tag == TheoremACaseTag::A4 ? "A4+" : to_string(tc.tag));
      } else {
        s.add_inconclusive(e.id + " " + got, "predicted Beauville; guided search " + to_string(cert.outcome));
      }
    } else {
      const bool omega = agemo(g, budget).log_order() == 1 && omega_negative_test(g, budget);
      s.add(e.id + " " + got, omega, omega ? "predicted not Beauville; refuted by the Omega_1 criterion"
                                            : "Omega_1 criterion does not apply");
      if (omega) covered.insert("A4-");
    }
  }
  for (const char* c : {"A1", "A2", "A3", "A4+", "A4-"})
    s.add(std::string("case ") + c + " represented", covered.count(c) > 0);
  return s;
}

}  // namespace thinville
