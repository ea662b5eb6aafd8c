// Exact checks of the binomial identities and power congruences that govern
// p-th powers in metabelian thin groups.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thinville/structure.hpp"

namespace thinville {

/// Binomial coefficient as a 64-bit integer (Pascal recurrence). n <= 62.
std::int64_t binomial(int n, int k);

/// C(i, j) = sum_{k=1}^{p-1} binom(k, i) binom(k, j), as an integer and mod p.
std::int64_t cij_integer(int i, int j, int p);
int cij(int i, int j, int p);

struct IdentityMismatch {
  std::vector<int> arguments;
  int expected = 0;
  int actual = 0;
};

struct IdentityReport {
  std::string name;
  int p = 0;
  int checked = 0;
  std::vector<IdentityMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// C(i, j) = 0 for i + j < p - 1 and (-1)^i for i + j = p - 1, all i, j >= 1.
IdentityReport cij_closed_form_check(int p);

/// Nonzero non-squares mod p, ascending.
std::vector<int> quadratic_nonresidues(int p);

/// sum_{s=1}^{(p-1)/2} (h t^2)^{s-1} = 2 / (1 - h t^2) for every non-residue
/// h and t in [1, p). A vanishing denominator is reported as a mismatch.
IdentityReport geometric_sum_check(int p);

int inverse_mod_p(int a, int p);

/// Compares (xy)^p with x^p y^p s_2^binom(p,2) ... s_p^binom(p,p) z, where
/// s_1 = y, s_i = [s_{i-1}, x] and
/// z = prod_{i,j=1}^{p-1} [s_{i+1}, s_1, ..., s_1 (j times)]^C(i,j),
/// with integer exponents. Requires a metabelian group.
bool miech_expansion_check(const PcGroup& g, const GroupElement& x, const GroupElement& y);

struct QuadraticPairCertificate {
  GroupElement x;
  GroupElement y;
  int h = 0;
  /// l = [y, x, y, ..., y] (p - 2 trailing y), m = [y, x, y, ..., y, x] (p - 3 y).
  GroupElement l;
  GroupElement m;
  /// x^p = l^alpha m^beta and y^p = l^gamma m^delta modulo gamma_{p+1};
  /// present when l, m span gamma_p / gamma_{p+1} and x^p, y^p lie in gamma_p.
  bool has_coordinates = false;
  int alpha = 0, beta = 0, gamma = 0, delta = 0;
};

/// Searches y over the normalized Frattini directions independent of x
/// (ascending) times Phi(G) (index order), h over the non-residues
/// (ascending), for [y,x,x,x] = [y,x,y,y]^h modulo gamma_5. Requires a
/// metabelian thin group of class at least 3 and x outside G'.
QuadraticPairCertificate find_quadratic_pair(const PcGroup& g, const GroupElement& x,
                                             std::uint64_t budget = kDefaultBudget);
/// Every witness, in search order, up to `limit`.
std::vector<QuadraticPairCertificate> all_quadratic_pairs(const PcGroup& g, const GroupElement& x,
                                                          std::size_t limit,
                                                          std::uint64_t budget = kDefaultBudget);

/// True iff gamma_2(G)^p <= gamma_{p+1}(G).
bool derived_powers_below_p_plus_one(const PcGroup& g);

/// (x^t y)^p = (x^p)^t y^p l^(-2t/(1-ht^2)) m^(2t^2/(1-ht^2)) modulo gamma_{p+1}.
bool power_congruence_check(const PcGroup& g, const QuadraticPairCertificate& cert, int t);

struct CollisionReport {
  int t0 = 0;
  std::vector<int> matches;  // t with <(x^t0 y)^p> = <(x^t y)^p> mod gamma_{p+1}
  bool bound_satisfied = false;
};

/// Requires |gamma_p| >= p^2.
CollisionReport collision_scan(const PcGroup& g, const QuadraticPairCertificate& cert, int t0);

/// <a^p> = <b^p> modulo gamma_{p+1}, for a, b in m minus G'.
bool companion_check(const PcGroup& g, const Subgroup& m, const GroupElement& a,
                     const GroupElement& b);

/// For each maximal subgroup (canonical order), the number of other maximal
/// subgroups M' with M^p = M'^p modulo gamma_{p+1}.
std::vector<int> coincidence_counts(const PcGroup& g, std::uint64_t budget = kDefaultBudget);

/// Equality of <a> N and <b> N for N normal.
bool same_cyclic_modulo(const PcGroup& g, const GroupElement& a, const GroupElement& b,
                        const Subgroup& n);

}  // namespace thinville
