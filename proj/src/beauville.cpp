#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "thinville/beauville.hpp"

namespace thinville {

namespace {

int inverse_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw Error("no inverse mod p");
}

// Rank of a list of vectors over F_p.
int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] % p) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const int inv = inverse_mod(rows[rank][c], p);
    for (auto& x : rows[rank]) x = (x * inv) % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (int k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

struct FrattiniFrame {
  Subgroup phi;
  std::vector<int> free;  // 0-based positions surviving in G / Phi
};

FrattiniFrame frattini_frame(const PcGroup& g) {
  FrattiniFrame f{frattini(g), {}};
  const auto lead = f.phi.leading_positions();
  for (int i = 0; i < g.rank(); ++i)
    if (std::find(lead.begin(), lead.end(), i) == lead.end()) f.free.push_back(i);
  return f;
}

FrattiniFrame require_two_generator(const PcGroup& g) {
  FrattiniFrame f = frattini_frame(g);
  if (f.free.size() != 2) throw PreconditionError("group is not 2-generator");
  return f;
}

std::vector<int> coordinates(const PcGroup& g, const FrattiniFrame& f, const GroupElement& x) {
  const GroupElement r = f.phi.coset_representative(g, x);
  std::vector<int> out;
  for (int i : f.free) out.push_back(r[i]);
  return out;
}

bool independent(const std::vector<int>& a, const std::vector<int>& b, int p) {
  return ((a[0] * b[1] - a[1] * b[0]) % p + p) % p != 0;
}

SigmaFingerprint fingerprint_of(const PcGroup& g, const ConjugacyCanonizer& canon,
                                const GeneratingTriple& t) {
  SigmaFingerprint f;
  for (const GroupElement* u : {&t.x, &t.y, &t.xy})
    f.socles.push_back(canon.canonical_cyclic(socle_generator(g, *u)));
  std::sort(f.socles.begin(), f.socles.end());
  f.socles.erase(std::unique(f.socles.begin(), f.socles.end()), f.socles.end());
  return f;
}

BeauvilleCertificate make_found(const PcGroup& g, const ConjugacyCanonizer& canon, SearchMode mode,
                                GeneratingTriple a, GeneratingTriple b, const SearchStats& stats) {
  BeauvilleCertificate c;
  c.outcome = Outcome::found;
  c.mode = mode;
  c.first_fingerprint = fingerprint_of(g, canon, a);
  c.second_fingerprint = fingerprint_of(g, canon, b);
  c.first = std::move(a);
  c.second = std::move(b);
  c.stats = stats;
  return c;
}

// ---------------------------------------------------------------------------
// Exhaustive search

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // the root is the smallest index of its class
  }
};

BeauvilleCertificate exhaustive_search(const PcGroup& g, const SearchOptions& opt) {
  const FrattiniFrame frame = require_two_generator(g);
  const int p = g.prime();
  BeauvilleCertificate cert;
  cert.mode = SearchMode::exhaustive;
  const std::uint64_t order = g.order();
  if (order > opt.budget) {
    cert.reason = "budget";
    return cert;
  }
  const std::size_t n = static_cast<std::size_t>(order);
  std::vector<GroupElement> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = g.from_index(i);
  GroupElement a = g.identity(), b = g.identity();
  a[frame.free[0]] = 1;
  b[frame.free[1]] = 1;
  UnionFind classes(n);
  for (std::size_t i = 0; i < n; ++i) {
    classes.unite(static_cast<std::uint32_t>(i),
                  static_cast<std::uint32_t>(g.index_of(g.conjugate(elems[i], a))));
    classes.unite(static_cast<std::uint32_t>(i),
                  static_cast<std::uint32_t>(g.index_of(g.conjugate(elems[i], b))));
  }
  std::vector<std::vector<int>> coords(n);
  std::vector<std::uint32_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    coords[i] = coordinates(g, frame, elems[i]);
    const bool outside = coords[i][0] != 0 || coords[i][1] != 0;
    if (outside && classes.find(static_cast<std::uint32_t>(i)) == i)
      reps.push_back(static_cast<std::uint32_t>(i));
  }
  if (static_cast<std::uint64_t>(reps.size()) * order > opt.budget) {
    cert.reason = "budget";
    return cert;
  }
  // Socle class id: smallest class root among the generators of the socle.
  std::vector<std::int32_t> socle_class(n, -1);
  std::vector<std::int32_t> cyclic_class(n, -1);
  for (std::size_t i = 1; i < n; ++i) {
    const GroupElement s = socle_generator(g, elems[i]);
    const std::size_t si = g.index_of(s);
    if (cyclic_class[si] < 0) {
      std::uint32_t best = classes.find(static_cast<std::uint32_t>(si));
      GroupElement sk = s;
      for (int k = 2; k < p; ++k) {
        sk = g.multiply(sk, s);
        best = std::min(best, classes.find(static_cast<std::uint32_t>(g.index_of(sk))));
      }
      cyclic_class[si] = static_cast<std::int32_t>(best);
    }
    socle_class[i] = cyclic_class[si];
  }

  using Key = std::array<std::int32_t, 3>;
  std::map<Key, std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t x : reps) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!independent(coords[x], coords[y], p)) continue;
      ++cert.stats.pairs_examined;
      const std::size_t z = g.index_of(g.multiply(elems[x], elems[y]));
      Key k{socle_class[x], socle_class[y], socle_class[z]};
      std::sort(k.begin(), k.end());
      if (k[1] == k[0]) k[0] = -1;
      if (k[2] == k[1]) k[1] = -1;
      std::sort(k.begin(), k.end());
      seen.emplace(k, std::make_pair(x, y));
    }
  }
  cert.stats.fingerprints = seen.size();
  std::vector<std::pair<Key, std::pair<std::uint32_t, std::uint32_t>>> table(seen.begin(), seen.end());
  auto disjoint = [](const Key& u, const Key& v) {
    for (auto s : u)
      if (s >= 0 && std::find(v.begin(), v.end(), s) != v.end()) return false;
    return true;
  };
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      ++cert.stats.comparisons;
      if (!disjoint(table[i].first, table[j].first)) continue;
      ConjugacyCanonizer canon(g);
      const auto& [x1, y1] = table[i].second;
      const auto& [x2, y2] = table[j].second;
      return make_found(g, canon, SearchMode::exhaustive, make_triple(g, elems[x1], elems[y1]),
                        make_triple(g, elems[x2], elems[y2]), cert.stats);
    }
  cert.outcome = Outcome::refuted;
  cert.reason = "exhausted";
  return cert;
}

// ---------------------------------------------------------------------------
// Guided search

class GuidedSearch {
 public:
  GuidedSearch(const PcGroup& g, const SearchOptions& opt)
      : g_(g), opt_(opt), frame_(require_two_generator(g)), canon_(g), rng_(opt.seed) {
    const int p = g.prime();
    dirs_.push_back({0, 1});
    for (int t = 0; t < p; ++t) dirs_.push_back({1, t});
  }

  std::optional<BeauvilleCertificate> run_directions() {
    const int p = g_.prime();
    const int m = static_cast<int>(dirs_.size());
    if (m < 6) return std::nullopt;
    std::vector<std::array<int, 3>> subsets;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c) subsets.push_back({a, b, c});
    std::map<std::array<int, 3>, std::vector<Candidate>> pool;
    for (int level = 0; level <= opt_.lifts; ++level) {
      for (const auto& s : subsets) extend(pool[s], s, level);
      for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
          const auto& s = subsets[i];
          const auto& t = subsets[j];
          bool overlap = false;
          for (int u : s) overlap = overlap || std::find(t.begin(), t.end(), u) != t.end();
          if (overlap) continue;
          for (const auto& c1 : pool[s])
            for (const auto& c2 : pool[t]) {
              if (c1.level != level && c2.level != level) continue;
              ++stats_.comparisons;
              if (fingerprints_disjoint(c1.fingerprint, c2.fingerprint))
                return make_found(g_, canon_, SearchMode::guided, c1.triple, c2.triple, stats_);
            }
        }
    }
    (void)p;
    return std::nullopt;
  }

  std::optional<BeauvilleCertificate> run_random() {
    const int p = g_.prime();
    std::vector<Candidate> seen;
    for (int trial = 0; trial < opt_.random_trials; ++trial) {
      GroupElement x = random_element();
      GroupElement y = random_element();
      if (!independent(coordinates(g_, frame_, x), coordinates(g_, frame_, y), p)) continue;
      Candidate c = candidate(make_triple(g_, x, y), 0);
      for (const auto& other : seen) {
        ++stats_.comparisons;
        if (fingerprints_disjoint(c.fingerprint, other.fingerprint))
          return make_found(g_, canon_, SearchMode::guided, other.triple, c.triple, stats_);
      }
      if (std::find_if(seen.begin(), seen.end(), [&](const Candidate& o) {
            return o.fingerprint == c.fingerprint;
          }) == seen.end())
        seen.push_back(std::move(c));
    }
    return std::nullopt;
  }

  const SearchStats& stats() const { return stats_; }

 private:
  struct Candidate {
    GeneratingTriple triple;
    SigmaFingerprint fingerprint;
    int level;
  };

  Candidate candidate(GeneratingTriple t, int level) {
    ++stats_.pairs_examined;
    ++stats_.fingerprints;
    SigmaFingerprint f = fingerprint_of(g_, canon_, t);
    return {std::move(t), std::move(f), level};
  }

  GroupElement lift(const std::vector<int>& v) const {
    GroupElement x = g_.identity();
    x[frame_.free[0]] = static_cast<std::uint8_t>(v[0]);
    x[frame_.free[1]] = static_cast<std::uint8_t>(v[1]);
    return x;
  }

  GroupElement random_frattini() {
    GroupElement x = g_.identity();
    std::uniform_int_distribution<int> d(0, g_.prime() - 1);
    for (const auto& b : frame_.phi.basis()) x = g_.multiply(x, g_.power(b, d(rng_)));
    return x;
  }

  GroupElement random_element() {
    GroupElement x = g_.identity();
    std::uniform_int_distribution<int> d(0, g_.prime() - 1);
    for (int i = 0; i < g_.rank(); ++i) x[i] = static_cast<std::uint8_t>(d(rng_));
    return x;
  }

  // Adds realizations of the direction set s: each member in turn plays the
  // role of xy. Level 0 uses the plain lifts, later levels random Phi-translates.
  void extend(std::vector<Candidate>& out, const std::array<int, 3>& s, int level) {
    const int p = g_.prime();
    for (int slot = 0; slot < 3; ++slot) {
      const auto& d1 = dirs_[s[(slot + 1) % 3]];
      const auto& d2 = dirs_[s[(slot + 2) % 3]];
      const auto& d3 = dirs_[s[slot]];
      GroupElement x = lift(d1);
      GroupElement y = lift(d2);
      if (level > 0) {
        x = g_.multiply(x, random_frattini());
        y = g_.multiply(y, random_frattini());
      }
      for (int j = 1; j < p; ++j) {
        std::vector<int> sum{(d1[0] + j * d2[0]) % p, (d1[1] + j * d2[1]) % p};
        if (normalize_direction(sum, p) != d3) continue;
        out.push_back(candidate(make_triple(g_, x, g_.power(y, j)), level));
        break;
      }
    }
  }

  const PcGroup& g_;
  const SearchOptions& opt_;
  FrattiniFrame frame_;
  ConjugacyCanonizer canon_;
  std::mt19937_64 rng_;
  std::vector<std::vector<int>> dirs_;
  SearchStats stats_;
};

BeauvilleCertificate guided_search(const PcGroup& g, const SearchOptions& opt) {
  require_two_generator(g);
  BeauvilleCertificate cert;
  cert.mode = SearchMode::guided;
  try {
    if (agemo(g, opt.budget).log_order() == 1 && omega_negative_test(g, opt.budget)) {
      cert.outcome = Outcome::refuted;
      cert.reason = "omega-criterion";
      return cert;
    }
  } catch (const BudgetExceeded&) {
  }
  GuidedSearch search(g, opt);
  if (auto found = search.run_directions()) return *found;
  if (auto found = search.run_random()) return *found;
  cert.reason = "not-found";
  cert.stats = search.stats();
  return cert;
}

}  // namespace

GeneratingTriple make_triple(const PcGroup& g, const GroupElement& x, const GroupElement& y) {
  GeneratingTriple t{x, y, g.multiply(x, y), {}};
  t.orders = {g.element_order(t.x), g.element_order(t.y), g.element_order(t.xy)};
  return t;
}

bool is_generating_pair(const PcGroup& g, const GroupElement& x, const GroupElement& y) {
  const FrattiniFrame f = frattini_frame(g);
  if (f.free.size() > 2) return false;
  if (f.free.empty()) return true;
  return rank_mod_p({coordinates(g, f, x), coordinates(g, f, y)}, g.prime()) ==
         static_cast<int>(f.free.size());
}

GroupElement socle_generator(const PcGroup& g, const GroupElement& u) {
  if (u.is_identity()) throw PreconditionError("the identity has no socle");
  const std::uint64_t o = g.element_order(u);
  return g.power(u, static_cast<long long>(o / static_cast<std::uint64_t>(g.prime())));
}

SigmaFingerprint sigma_fingerprint(const PcGroup& g, const ConjugacyCanonizer& canon,
                                   const GroupElement& x, const GroupElement& y) {
  return fingerprint_of(g, canon, make_triple(g, x, y));
}

SigmaFingerprint sigma_fingerprint(const PcGroup& g, const GroupElement& x, const GroupElement& y) {
  return sigma_fingerprint(g, ConjugacyCanonizer(g), x, y);
}

bool fingerprints_disjoint(const SigmaFingerprint& a, const SigmaFingerprint& b) {
  for (const auto& s : a.socles)
    if (std::binary_search(b.socles.begin(), b.socles.end(), s)) return false;
  return true;
}

bool is_beauville_pair(const PcGroup& g, const GeneratingTriple& t1, const GeneratingTriple& t2) {
  if (!is_generating_pair(g, t1.x, t1.y) || !is_generating_pair(g, t2.x, t2.y))
    throw PreconditionError("triple does not generate the group");
  const ConjugacyCanonizer canon(g);
  return fingerprints_disjoint(fingerprint_of(g, canon, t1), fingerprint_of(g, canon, t2));
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::found: return "found";
    case Outcome::refuted: return "refuted";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "guided"; }

BeauvilleCertificate find_beauville_structure(const PcGroup& g, const SearchOptions& options) {
  return options.mode == SearchMode::exhaustive ? exhaustive_search(g, options)
                                                : guided_search(g, options);
}

bool verify_certificate(const PcGroup& g, const BeauvilleCertificate& cert) {
  if (cert.outcome != Outcome::found || !cert.first || !cert.second) return false;
  const GeneratingTriple a = make_triple(g, cert.first->x, cert.first->y);
  const GeneratingTriple b = make_triple(g, cert.second->x, cert.second->y);
  return is_beauville_pair(g, a, b);
}

bool omega_negative_test(const PcGroup& g, std::uint64_t budget) {
  if (agemo(g, budget).log_order() != 1) throw PreconditionError("omega test needs |G^p| = p");
  const FrattiniFrame f = frattini_frame(g);
  const int p = g.prime();
  std::set<std::vector<int>> directions;
  for_each_element(g, Subgroup::whole(g), budget, [&](const GroupElement& x) {
    auto c = coordinates(g, f, x);
    if (std::all_of(c.begin(), c.end(), [](int v) { return v == 0; })) return true;
    if (!g.power(x, p).is_identity()) return true;
    directions.insert(normalize_direction(std::move(c), p));
    return directions.size() <= 2;
  });
  return directions.size() <= 2;
}

bool catanese_check(long long n) { return n > 1 && std::gcd(n, 6LL) == 1; }

bool lift_check(const PcGroup& g, const Subgroup& n, const GeneratingTriple& t1,
                const GeneratingTriple& t2) {
  if (!is_normal(g, n)) throw PreconditionError("lifting needs a normal subgroup");
  const Quotient q(g, n);
  const PcGroup& h = q.group();
  const GeneratingTriple q1 = make_triple(h, q.project(t1.x), q.project(t1.y));
  const GeneratingTriple q2 = make_triple(h, q.project(t2.x), q.project(t2.y));
  if (!is_beauville_pair(h, q1, q2))
    throw PreconditionError("images do not form a Beauville structure of the quotient");
  for (int k = 0; k < 3; ++k)
    if (t1.orders[k] != q1.orders[k]) return false;
  if (!is_beauville_pair(g, t1, t2)) throw Error("lifted pair fails in the group");
  return true;
}

std::string to_string(TheoremACaseTag t) {
  switch (t) {
    case TheoremACaseTag::A1: return "A1";
    case TheoremACaseTag::A2: return "A2";
    case TheoremACaseTag::A3: return "A3";
    case TheoremACaseTag::A4: return "A4";
    case TheoremACaseTag::out_of_scope: return "out-of-scope";
  }
  return "?";
}

int count_exponent_p_maximal(const PcGroup& g, std::uint64_t budget) {
  int count = 0;
  for (const auto& m : maximal_subgroups(g))
    if (has_exponent_p(g, m.subgroup, budget)) ++count;
  return count;
}

TheoremACase classify_theorem_a(const PcGroup& g, std::uint64_t budget) {
  TheoremACase r;
  const int p = g.prime();
  const CentralSeries lcs = lower_central_series(g);
  r.nilpotency_class = static_cast<int>(lcs.terms.size()) - 1;
  if (p < 5) {
    r.note = "prime below 5";
    return r;
  }
  if (!is_metabelian(g)) {
    r.note = "not metabelian";
    return r;
  }
  if (is_maximal_class(g)) {
    r.note = "maximal class";
    return r;
  }
  if (!is_thin(g).thin) {
    r.note = "not thin";
    return r;
  }
  const int c = r.nilpotency_class;
  if (c < p) {
    r.note = "class below p: decided by the regular power-structure criterion";
    return r;
  }
  if (c == p + 1) {
    r.tag = TheoremACaseTag::A2;
    r.predicted_beauville = true;
    return r;
  }
  if (c != p) {
    r.note = "class above p + 1";
    return r;
  }
  const Subgroup& gamma_p = lcs.terms[p - 1];
  if (gamma_p.log_order() == 2) {
    r.tag = TheoremACaseTag::A1;
    r.predicted_beauville = true;
    return r;
  }
  const Subgroup gp = agemo(g, budget);
  if (gp == lcs.terms[p - 2]) {
    r.tag = TheoremACaseTag::A3;
    r.predicted_beauville = true;
    return r;
  }
  if (gp == gamma_p) {
    r.tag = TheoremACaseTag::A4;
    r.exponent_p_maximal = count_exponent_p_maximal(g, budget);
    r.predicted_beauville = r.exponent_p_maximal >= 3;
    return r;
  }
  r.note = "power subgroup strictly between gamma_p and gamma_{p-1}";
  return r;
}

}  // namespace thinville
