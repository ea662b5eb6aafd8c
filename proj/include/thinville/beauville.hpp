// Sigma-set fingerprints, Beauville structure search and the case classifier
// for metabelian thin groups of class p and p + 1.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thinville/structure.hpp"

namespace thinville {

struct GeneratingTriple {
  GroupElement x;
  GroupElement y;
  GroupElement xy;
  std::array<std::uint64_t, 3> orders{};
};

GeneratingTriple make_triple(const PcGroup& g, const GroupElement& x, const GroupElement& y);

/// True iff x and y span G / Phi(G).
bool is_generating_pair(const PcGroup& g, const GroupElement& x, const GroupElement& y);

/// Sigma(x, y) up to the socle reduction: for u in {x, y, xy} the subgroup
/// of order p inside <u> determines which conjugates of <u> can meet other
/// cyclic subgroups. Each socle is stored as the canonical representative of
/// its conjugacy class (see ConjugacyCanonizer::canonical_cyclic).
struct SigmaFingerprint {
  std::vector<GroupElement> socles;  // sorted, distinct
  friend bool operator==(const SigmaFingerprint&, const SigmaFingerprint&) = default;
};

/// u^(o(u)/p) for u != 1.
GroupElement socle_generator(const PcGroup& g, const GroupElement& u);

SigmaFingerprint sigma_fingerprint(const PcGroup& g, const ConjugacyCanonizer& canon,
                                   const GroupElement& x, const GroupElement& y);
SigmaFingerprint sigma_fingerprint(const PcGroup& g, const GroupElement& x, const GroupElement& y);

bool fingerprints_disjoint(const SigmaFingerprint& a, const SigmaFingerprint& b);

/// Throws PreconditionError when a triple does not generate G.
bool is_beauville_pair(const PcGroup& g, const GeneratingTriple& t1, const GeneratingTriple& t2);

enum class SearchMode { exhaustive, guided };
enum class Outcome { found, refuted, inconclusive };
std::string to_string(Outcome o);
std::string to_string(SearchMode m);

struct SearchOptions {
  SearchMode mode = SearchMode::guided;
  /// Exhaustive mode: cap on (conjugacy-class representatives of x) * |G|.
  /// Guided mode: cap on elements visited by the Omega_1 test.
  std::uint64_t budget = kDefaultBudget;
  /// Guided mode: random lifts per Frattini direction and random fallback trials.
  int lifts = 3;
  int random_trials = 2000;
  std::uint64_t seed = 0x5eed;
};

struct SearchStats {
  std::uint64_t pairs_examined = 0;
  std::uint64_t fingerprints = 0;
  std::uint64_t comparisons = 0;
};

struct BeauvilleCertificate {
  Outcome outcome = Outcome::inconclusive;
  SearchMode mode = SearchMode::guided;
  std::optional<GeneratingTriple> first;
  std::optional<GeneratingTriple> second;
  SigmaFingerprint first_fingerprint;
  SigmaFingerprint second_fingerprint;
  /// "omega-criterion", "exhausted", "budget", "not-found", "abelian-criterion"
  /// or empty for found certificates.
  std::string reason;
  SearchStats stats;
};

/// Requires a 2-generator group. "refuted" only comes from the Omega_1
/// criterion or a completed exhaustive enumeration.
BeauvilleCertificate find_beauville_structure(const PcGroup& g, const SearchOptions& options = {});

/// Re-verifies a found certificate from scratch.
bool verify_certificate(const PcGroup& g, const BeauvilleCertificate& cert);

/// Requires |G^p| = p. True certifies that G has no Beauville structure: the
/// elements of order p outside Phi(G) lie in at most two maximal subgroups.
bool omega_negative_test(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

/// C_n x C_n is Beauville iff n > 1 and gcd(n, 6) = 1.
bool catanese_check(long long n);

/// Lifting of a structure from G / N: requires that the images form a
/// Beauville structure of G / N. Returns whether every element of the first
/// triple keeps its order modulo N; when it does, the pair is re-verified in
/// G and a failure there throws Error.
bool lift_check(const PcGroup& g, const Subgroup& n, const GeneratingTriple& t1,
                const GeneratingTriple& t2);

enum class TheoremACaseTag { A1, A2, A3, A4, out_of_scope };
std::string to_string(TheoremACaseTag t);

struct TheoremACase {
  TheoremACaseTag tag = TheoremACaseTag::out_of_scope;
  bool predicted_beauville = false;
  /// Number of maximal subgroups of exponent p (case A4 only, else -1).
  int exponent_p_maximal = -1;
  int nilpotency_class = 0;
  std::string note;
};

/// Metabelian thin, not of maximal class, p >= 5, class p or p + 1.
/// Anything else is reported out of scope.
TheoremACase classify_theorem_a(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

/// Number of maximal subgroups of exponent p.
int count_exponent_p_maximal(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

}  // namespace thinville
