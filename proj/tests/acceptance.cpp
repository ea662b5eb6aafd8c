// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria (capped at 1).
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "thinville/report.hpp"

using namespace thinville;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

std::vector<CatalogEntry> catalog() { return load_catalog(catalog_directory()); }

bool metabelian_thin(const PcGroup& g) { return is_metabelian(g) && is_thin(g).thin; }

GroupElement random_element(const PcGroup& g, std::mt19937_64& rng) {
  return g.from_index(std::uniform_int_distribution<std::uint64_t>(0, g.order() - 1)(rng));
}

GroupElement random_member(const PcGroup& g, const Subgroup& h, std::mt19937_64& rng) {
  GroupElement x = g.identity();
  for (const auto& b : h.basis()) x = g.multiply(x, g.power(b, static_cast<long long>(rng() % g.prime())));
  return x;
}

std::pair<GroupElement, GroupElement> random_pair(const PcGroup& g, std::mt19937_64& rng) {
  while (true) {
    auto x = random_element(g, rng), y = random_element(g, rng);
    if (is_generating_pair(g, x, y)) return {x, y};
  }
}

// Lifts of the p + 1 Frattini directions of a 2-generator group.
std::vector<GroupElement> direction_lifts(const PcGroup& g) {
  std::vector<GroupElement> out;
  const auto phi = frattini(g);
  for (const auto& m : maximal_subgroups(g))
    for (const auto& b : m.subgroup.basis())
      if (!phi.contains(g, b)) {
        out.push_back(b);
        break;
      }
  return out;
}

// Criterion 1.
void p3_beauville(Verdict& v) {
  const auto s = p3_suite(catalog_directory());
  int lines = 0;
  for (const auto& l : s.lines) {
    ++lines;
    if (l.status != "pass") v.fail(l.label + ": " + l.status + " " + l.detail);
  }
  if (v.ok) v.detail << lines << " checks, Beauville set {sg-3_5-3, sg-3_6-34, sg-3_6-37}";
}

// Criterion 2, against the direct sum of binomials.
void cij_closed_form(Verdict& v) {
  int checked = 0;
  for (int p : {3, 5, 7, 11, 13})
    for (int i = 1; i < p; ++i)
      for (int j = 1; i + j <= p - 1; ++j) {
        const int want = i + j < p - 1 ? 0 : (i % 2 ? p - 1 : 1);
        if (oracle::cij_mod(i, j, p) != want || cij(i, j, p) != want)
          v.fail("C(" + std::to_string(i) + "," + std::to_string(j) + ") mod " + std::to_string(p));
        ++checked;
      }
  for (int p : {3, 5, 7, 11, 13})
    if (!cij_closed_form_check(p).passed()) v.fail("closed form check at p=" + std::to_string(p));
  if (v.ok) v.detail << checked << " pairs";
}

// Criterion 3, with residues and inverses from the oracle.
void geometric_sum(Verdict& v) {
  int checked = 0;
  for (int p : {5, 7, 11, 13}) {
    for (int h = 1; h < p; ++h) {
      if (oracle::is_square_mod(h, p)) continue;
      for (int t = 1; t < p; ++t) {
        const int ht2 = h * t * t % p;
        const int denom = (1 - ht2 + p) % p;
        if (denom == 0) {
          v.fail("1 - ht^2 = 0 at p=" + std::to_string(p));
          continue;
        }
        int sum = 0;
        for (int s = 1; s <= (p - 1) / 2; ++s) sum = (sum + oracle::pow_mod(ht2, s - 1, p)) % p;
        if (sum != 2 * oracle::inv_mod(denom, p) % p) v.fail("sum mismatch at p=" + std::to_string(p));
        ++checked;
      }
    }
    if (!geometric_sum_check(p).passed()) v.fail("library check at p=" + std::to_string(p));
  }
  if (v.ok) v.detail << checked << " (p, h, t) triples";
}

// Criterion 4.
void power_expansion(Verdict& v) {
  std::mt19937_64 rng(0x4d);
  std::vector<CatalogEntry> entries = catalog();
  for (const char* id : {"heisenberg-5", "cpk2-5-2", "heisenberg-3", "elab-5", "cpk2-3-2"})
    entries.push_back(builtin_entry(id));
  int groups = 0;
  for (const auto& e : entries) {
    PcGroup g(e.presentation);
    if (!is_metabelian(g)) continue;
    ++groups;
    for (int k = 0; k < 200; ++k)
      if (!miech_expansion_check(g, random_element(g, rng), random_element(g, rng))) {
        v.fail(e.id);
        break;
      }
  }
  if (v.ok) v.detail << groups << " metabelian groups x 200 pairs";
}

// Criterion 5.
void power_congruence(Verdict& v) {
  int groups = 0, certs = 0;
  for (const auto& e : catalog()) {
    PcGroup g(e.presentation);
    if (!metabelian_thin(g) || nilpotency_class(g) < 3 || !derived_powers_below_p_plus_one(g)) continue;
    ++groups;
    for (const auto& x : direction_lifts(g))
      for (const auto& cert : all_quadratic_pairs(g, x, 8)) {
        ++certs;
        for (int t = 0; t < g.prime(); ++t)
          if (!power_congruence_check(g, cert, t)) v.fail(e.id + " t=" + std::to_string(t));
      }
  }
  if (groups == 0) v.fail("no applicable group");
  if (v.ok) v.detail << groups << " groups, " << certs << " certificates, all t";
}

// Criterion 6.
void collision_companion(Verdict& v) {
  std::mt19937_64 rng(0x6c);
  int groups = 0;
  for (const auto& e : catalog()) {
    PcGroup g(e.presentation);
    if (!metabelian_thin(g) || nilpotency_class(g) < 3) continue;
    const auto lcs = lower_central_series(g);
    const int p = g.prime();
    if (static_cast<int>(lcs.terms.size()) <= p || lcs.terms[p - 1].log_order() < 2) continue;
    if (!derived_powers_below_p_plus_one(g)) continue;
    ++groups;
    for (const auto& x : direction_lifts(g)) {
      const auto cert = find_quadratic_pair(g, x);
      for (int t0 = 0; t0 < p; ++t0)
        if (!collision_scan(g, cert, t0).bound_satisfied) v.fail(e.id + " collision bound");
    }
    const auto d = derived_subgroup(g);
    for (const auto& m : maximal_subgroups(g)) {
      for (int k = 0; k < 100; ++k) {
        GroupElement a;
        do {
          a = random_element(g, rng);
        } while (!m.subgroup.contains(g, a) || d.contains(g, a));
        const GroupElement c = random_member(g, d, rng);
        if (!companion_check(g, m.subgroup, a, g.multiply(a, c))) v.fail(e.id + " companion");
      }
    }
    for (int c : coincidence_counts(g))
      if (c > 2) v.fail(e.id + " coincidence count " + std::to_string(c));
  }
  if (groups == 0) v.fail("no applicable group");
  if (v.ok) v.detail << groups << " groups";
}

// Criterion 7.
void case_agreement(Verdict& v) {
  const auto s = p5_suite(catalog_directory());
  for (const auto& l : s.lines)
    if (l.status != "pass") v.fail(l.label + ": " + l.status + " " + l.detail);
  if (v.ok) v.detail << "A1, A2, A3, A4+ found; A4- refuted by the Omega_1 criterion";
}

// Criterion 8.
void abelian_criterion(Verdict& v) {
  SearchOptions ex;
  ex.mode = SearchMode::exhaustive;
  for (auto [id, n] : std::vector<std::pair<std::string, int>>{
           {"cpk2-3-1", 3}, {"cpk2-5-1", 5}, {"cpk2-7-1", 7}, {"cpk2-3-2", 9}, {"cpk2-5-2", 25}}) {
    PcGroup g(builtin(id));
    const auto cert = find_beauville_structure(g, ex);
    const bool found = cert.outcome == Outcome::found && verify_certificate(g, cert);
    const bool refuted = cert.outcome == Outcome::refuted;
    if (catanese_check(n) ? !found : !refuted) v.fail("C_" + std::to_string(n) + " x C_" + std::to_string(n));
    v.detail << (v.detail.tellp() > 0 ? ", " : "") << "C" << n << "^2 " << to_string(cert.outcome);
  }
}

// Criterion 9.
void structural_properties(Verdict& v) {
  std::mt19937_64 rng(0x9a);
  int groups = 0;
  for (const auto& e : catalog()) {
    PcGroup g(e.presentation);
    if (!metabelian_thin(g)) continue;
    ++groups;
    const int p = g.prime();
    const auto lcs = lower_central_series(g);
    const auto ag = agemo(g);
    if (static_cast<int>(lcs.terms.size()) > p - 1 && !lcs.terms[p - 1].is_subgroup_of(g, ag))
      v.fail(e.id + " G^p does not contain gamma_p");
    for (std::size_t i = 0; i + 2 < lcs.terms.size(); ++i) {
      for (int k = 0; k < 10; ++k) {
        GroupElement x;
        do {
          x = random_member(g, lcs.terms[i], rng);
        } while (lcs.terms[i + 1].contains(g, x));
        std::vector<GroupElement> gens = lcs.terms[i + 2].basis();
        for (int j = 1; j <= g.rank(); ++j) gens.push_back(g.commutator(x, g.generator(j)));
        if (generated_subgroup(g, gens) != lcs.terms[i + 1]) v.fail(e.id + " covering property");
      }
    }
    if (!is_maximal_class(g)) {
      const auto r = verify_place_of_agemo(g);
      if (!r.all_pass()) v.fail(e.id + " place of G^p");
    }
    if (ag.log_order() > 3) v.fail(e.id + " |G^p| > p^3");
    const auto prof = lattice_profile(g);
    if (prof.ends_with_chain && ag.log_order() == 2) v.fail(e.id + " chain-ending lattice with |G^p| = p^2");
    if (!prof.matches_thin_shape) v.fail(e.id + " lattice shape " + format_profile(prof));
  }
  if (v.ok) v.detail << groups << " metabelian thin groups";
}

// Random consistent 3-group presentations of rank n.
std::vector<PcPresentation> random_groups(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PcPresentation> out;
  std::uniform_int_distribution<int> exp(0, 2), coin(0, 3);
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 200000; ++tries) {
    PcPresentation pres(3, n);
    auto word = [&](int above) {
      Word w;
      if (coin(rng) < 2) return w;
      for (int k = above + 1; k <= n; ++k)
        if (coin(rng) == 0)
          if (int e = exp(rng)) w.push_back({k, e});
      return w;
    };
    for (int i = 1; i <= n; ++i) pres.set_power(i, word(i));
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i) pres.set_commutator(j, i, word(j));
    if (check_consistency(pres).consistent) out.push_back(pres);
  }
  return out;
}

// Criterion 10.
void oracle_equivalence(Verdict& v) {
  std::vector<std::pair<std::string, PcPresentation>> groups;
  for (const char* id : {"elab-3", "heisenberg-3", "cpk2-3-2", "cpk2-3-3", "heisenberg-5"})
    groups.emplace_back(id, builtin(id));
  for (const auto& e : catalog())
    if (e.presentation.prime() == 3) groups.emplace_back(e.id, e.presentation);
  for (int n = 2; n <= 6; ++n) {
    int k = 0;
    for (auto& pres : random_groups(n, 8, 0x3a + n)) groups.emplace_back("random-" + std::to_string(n) + "-" + std::to_string(k++), pres);
  }
  std::mt19937_64 rng(0x10);
  int thin_count = 0, pairs = 0;
  for (const auto& [id, pres] : groups) {
    PcGroup g(pres);
    oracle::Table t(g);
    const bool thin = is_thin(g).thin;
    thin_count += thin;
    if (thin != t.is_thin(g.prime())) v.fail(id + " is_thin");
    if (normal_subgroups(g).size() != t.normal_subgroups().size()) v.fail(id + " normal subgroup count");
    if (frattini(g).log_order() != g.rank() - 2) continue;
    ConjugacyCanonizer canon(g);
    for (int k = 0; k < 100; ++k) {
      const auto [x1, y1] = random_pair(g, rng);
      const auto [x2, y2] = random_pair(g, rng);
      const bool fast = fingerprints_disjoint(sigma_fingerprint(g, canon, x1, y1), sigma_fingerprint(g, canon, x2, y2));
      const bool slow = oracle::Table::meet_trivially(
          t.sigma(static_cast<std::uint32_t>(t.index(x1)), static_cast<std::uint32_t>(t.index(y1))),
          t.sigma(static_cast<std::uint32_t>(t.index(x2)), static_cast<std::uint32_t>(t.index(y2))));
      if (fast != slow) v.fail(id + " fingerprint disjointness");
      ++pairs;
    }
  }
  if (v.ok) v.detail << groups.size() << " groups (" << thin_count << " thin), " << pairs << " triple pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"Beauville 3-groups among the catalog", p3_beauville},
      {"C(i,j) closed form", cij_closed_form},
      {"geometric-sum identity", geometric_sum},
      {"power expansion on metabelian groups", power_expansion},
      {"power congruence for quadratic pairs", power_congruence},
      {"collision, companion and coincidence bounds", collision_companion},
      {"case classifier against search on 5-groups", case_agreement},
      {"abelian criterion cross-check", abelian_criterion},
      {"structural properties of thin groups", structural_properties},
      {"oracle equivalences", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.ok;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " [" << timing
              << "] " << v.detail.str() << std::endl;
  }
  return failed ? 1 : 0;
}
