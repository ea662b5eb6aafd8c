// Subgroups, central series, power structure and the thin-group predicates.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thinville/pc.hpp"

namespace thinville {

/// Default cap on the number of elements any enumeration may visit.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// A subgroup stored as its canonical induced generating sequence: strictly
/// increasing depths, leading exponent 1, and zero exponents above every
/// other basis element's leading position. Equal subgroups have equal bases.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup trivial(const PcGroup& g);
  static Subgroup whole(const PcGroup& g);

  const std::vector<GroupElement>& basis() const { return basis_; }
  /// log_p |H|.
  int log_order() const { return static_cast<int>(basis_.size()); }
  std::uint64_t order(const PcGroup& g) const;
  /// 0-based leading positions of the basis.
  std::vector<int> leading_positions() const;

  bool contains(const PcGroup& g, const GroupElement& x) const;
  bool is_subgroup_of(const PcGroup& g, const Subgroup& other) const;
  /// Canonical representative of the right coset x H (zero at every leading
  /// position of the basis).
  GroupElement coset_representative(const PcGroup& g, GroupElement x) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;

 private:
  friend Subgroup make_canonical(const PcGroup& g, std::vector<GroupElement> table);
  std::vector<GroupElement> basis_;
};

std::string to_string(const Subgroup& h);

Subgroup generated_subgroup(const PcGroup& g, std::span<const GroupElement> gens);
/// Smallest subgroup containing gens and closed under conjugation by G.
Subgroup normal_closure(const PcGroup& g, std::span<const GroupElement> gens);
/// Smallest subgroup containing gens and closed under conjugation by the
/// elements of `by` (which must generate a group normalizing the result).
Subgroup closure_under(const PcGroup& g, std::span<const GroupElement> gens,
                       std::span<const GroupElement> by);
Subgroup join(const PcGroup& g, const Subgroup& a, const Subgroup& b);
bool is_normal(const PcGroup& g, const Subgroup& h);
/// [H, K] for H, K normal in G.
Subgroup commutator_subgroup(const PcGroup& g, const Subgroup& h, const Subgroup& k);

/// The quotient G/N by a normal subgroup, with its own pc presentation on the
/// generators of G not leading in N. Holds a reference to G.
class Quotient {
 public:
  Quotient(const PcGroup& g, Subgroup kernel);

  const PcGroup& group() const { return quotient_; }
  const PcGroup& parent() const { return *parent_; }
  const Subgroup& kernel() const { return kernel_; }
  /// 0-based generators of G that survive in G/N, in order.
  const std::vector<int>& free_positions() const { return free_; }

  GroupElement project(const GroupElement& x) const;
  /// Canonical preimage (zero exponents on the leading positions of N).
  GroupElement lift(const GroupElement& y) const;
  Subgroup image(const Subgroup& h) const;
  Subgroup preimage(const Subgroup& h) const;

 private:
  const PcGroup* parent_;
  Subgroup kernel_;
  std::vector<int> free_;
  PcGroup quotient_;
};

struct CentralSeries {
  std::vector<Subgroup> terms;
  /// widths[i] = log_p |terms[i] : terms[i+1]| (or reverse for ascending series).
  std::vector<int> widths;
};

/// gamma_1 = G, ..., ending with the trivial subgroup.
CentralSeries lower_central_series(const PcGroup& g);
/// Z_0 = 1, Z_1 = Z(G), ..., ending with G.
CentralSeries upper_central_series(const PcGroup& g);
Subgroup derived_subgroup(const PcGroup& g);
Subgroup center(const PcGroup& g);
/// Elements commuting with every element of `with`.
Subgroup centralizer(const PcGroup& g, std::span<const GroupElement> with);
int nilpotency_class(const PcGroup& g);

/// Coordinates of x in top / below, where below <= top are normal and
/// top / below is elementary abelian; one coordinate per basis element of
/// top whose leading position is not leading in below.
std::vector<int> quotient_coordinates(const PcGroup& g, const Subgroup& top, const Subgroup& below,
                                      const GroupElement& x);

/// Canonical conjugacy-class representatives. The representative is fixed
/// layer by layer down the lower central series: at layer i the conjugates
/// agreeing with the current element modulo gamma_i sweep out a coset of a
/// subspace of gamma_i / gamma_{i+1}, and the reduced coset representative
/// is taken.
class ConjugacyCanonizer {
 public:
  explicit ConjugacyCanonizer(const PcGroup& g);

  GroupElement canonical(const GroupElement& x) const;
  bool are_conjugate(const GroupElement& a, const GroupElement& b) const {
    return canonical(a) == canonical(b);
  }
  /// Canonical representative of the class of <s> for s of order p: the
  /// power of s with leading layer coordinate 1, then canonicalized.
  GroupElement canonical_cyclic(const GroupElement& s) const;

  /// 1-based i with x in gamma_i minus gamma_{i+1}; class + 1 for the identity.
  int layer_of(const GroupElement& x) const;
  /// Coordinates of x (an element of gamma_i) in gamma_i / gamma_{i+1}.
  std::vector<int> layer_coordinates(int i, const GroupElement& x) const;
  const CentralSeries& series() const { return series_; }

 private:
  const PcGroup* g_;
  CentralSeries series_;
  std::vector<std::unique_ptr<Quotient>> quotients_;  // [i] = G / gamma_i, i >= 2
};

/// Calls fn on every element of h; fn may return false to stop early.
/// Throws BudgetExceeded when |h| > budget.
template <class Fn>
void for_each_element(const PcGroup& g, const Subgroup& h, std::uint64_t budget, Fn&& fn);

/// G^p = <x^p : x in G>, by enumeration of canonical coset representatives
/// modulo the part of G^p found so far.
Subgroup agemo(const PcGroup& g, std::uint64_t budget = kDefaultBudget);
/// M^p N for normal subgroups N <= M, by the same coset-representative
/// enumeration as agemo.
Subgroup relative_agemo(const PcGroup& g, const Subgroup& m, const Subgroup& n,
                        std::uint64_t budget = kDefaultBudget);
/// Omega_1(G) = <x : x^p = 1>, by full element enumeration.
Subgroup omega1(const PcGroup& g, std::uint64_t budget = kDefaultBudget);
/// Largest element order in h.
std::uint64_t exponent(const PcGroup& g, const Subgroup& h, std::uint64_t budget = kDefaultBudget);
bool has_exponent_p(const PcGroup& g, const Subgroup& h, std::uint64_t budget = kDefaultBudget);
/// Subgroup generated by the p-th powers of an abelian subgroup.
Subgroup abelian_agemo(const PcGroup& g, const Subgroup& h);
bool is_abelian(const PcGroup& g, const Subgroup& h);
bool is_cyclic(const PcGroup& g, const Subgroup& h);

/// Phi(G) = G^p G'.
Subgroup frattini(const PcGroup& g);

struct MaximalSubgroup {
  Subgroup subgroup;
  /// Normalized spanning vector of M/Phi(G) when G is 2-generator;
  /// otherwise the normalized functional whose kernel is M/Phi(G).
  std::vector<int> direction;
};

/// Canonically ordered (by direction vector) maximal subgroups.
std::vector<MaximalSubgroup> maximal_subgroups(const PcGroup& g);
/// Coordinates of x in G/Phi(G).
std::vector<int> frattini_coordinates(const PcGroup& g, const Subgroup& phi, const GroupElement& x);
/// First nonzero coordinate scaled to 1; empty input maps to itself.
std::vector<int> normalize_direction(std::vector<int> v, int p);

bool is_metabelian(const PcGroup& g);
/// Class = log_p|G| - 1, with order p^2 excluded.
bool is_maximal_class(const PcGroup& g);

struct ThinResult {
  bool thin = false;
  std::string reason;  // empty when thin
  /// 1-based layer where the check failed, 0 if none.
  int layer = 0;
  /// A normal subgroup not sandwiched between consecutive gamma terms.
  std::optional<Subgroup> witness;
};

ThinResult is_thin(const PcGroup& g);

/// Every normal subgroup, canonically sorted. Built by adjoining central
/// order-p subgroups of successive quotients.
std::vector<Subgroup> normal_subgroups(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

enum class LayerShape { chain, diamond, other };
std::string to_string(LayerShape s);

struct LatticeLayer {
  int level = 0;   // i: gamma_{i+1} <= N <= gamma_i
  int width = 0;   // log_p |gamma_i : gamma_{i+1}|
  int count = 0;   // normal subgroups in the closed interval
  LayerShape shape = LayerShape::other;
};

struct LatticeProfile {
  std::vector<LatticeLayer> layers;
  bool ends_with_chain = false;
  /// diamond, then (chain, diamond*, chain?) as in a metabelian thin group.
  bool matches_thin_shape = false;
  int normal_subgroup_count = 0;
};

LatticeProfile lattice_profile(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

/// Normal-subgroup lattice as a DOT digraph; nodes labelled N<order>@layer<i>.
std::string lattice_dot(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

struct PlaceOfAgemoReport {
  int l = 0;                       // largest l with G^p <= gamma_l
  int agemo_log_order = 0;
  bool l_in_range = false;         // 3 <= l <= p
  bool next_term_cyclic = false;   // gamma_{l+1} cyclic
  bool second_term_trivial = false;  // gamma_{l+2} = 1
  bool derived_powers_inside = false;  // gamma_2^p <= gamma_{l+1}
  bool agemo_at_most_p3 = false;
  bool all_pass() const {
    return l_in_range && next_term_cyclic && second_term_trivial && derived_powers_inside &&
           agemo_at_most_p3;
  }
};

/// Requires a nonabelian metabelian thin group that is not of maximal class.
PlaceOfAgemoReport verify_place_of_agemo(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------

template <class Fn>
void for_each_element(const PcGroup& g, const Subgroup& h, std::uint64_t budget, Fn&& fn) {
  const std::uint64_t size = h.order(g);
  if (size > budget)
    throw BudgetExceeded("enumeration of " + std::to_string(size) + " elements exceeds budget " +
                         std::to_string(budget));
  const auto& basis = h.basis();
  const int r = static_cast<int>(basis.size());
  if (r == g.rank()) {
    for (std::uint64_t i = 0; i < size; ++i)
      if (!fn(g.from_index(i))) return;
    return;
  }
  // prefix[k] = b_1^e_1 ... b_k^e_k
  std::vector<GroupElement> prefix(r + 1, g.identity());
  std::vector<int> e(r, 0);
  const int p = g.prime();
  for (int k = 0; k < r; ++k) prefix[k + 1] = prefix[k];
  while (true) {
    if (!fn(prefix[r])) return;
    int k = r - 1;
    while (k >= 0 && e[k] == p - 1) {
      e[k] = 0;
      --k;
    }
    if (k < 0) return;
    ++e[k];
    prefix[k + 1] = g.multiply(prefix[k + 1], basis[k]);
    for (int t = k + 1; t < r; ++t) prefix[t + 1] = prefix[t];
  }
}

}  // namespace thinville
