#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thinville/beauville.hpp"
#include "thinville/catalog.hpp"
#include "thinville/congruence.hpp"

using namespace thinville;

namespace {

PcGroup group(const std::string& id) { return PcGroup(resolve(id).presentation); }

}  // namespace

TEST_CASE("C(i,j) values") {
  CHECK(cij(1, 2, 5) == 0);
  CHECK(cij(1, 3, 5) == 4);
  CHECK(cij(3, 3, 7) == 6);
  CHECK(cij_integer(1, 2, 5) == 35);
  CHECK(cij_integer(1, 3, 5) == 19);
  for (int p : {3, 5, 7, 11, 13})
    for (int i = 1; i < p; ++i)
      for (int j = 1; j < p; ++j) CHECK(cij(i, j, p) == oracle::cij_mod(i, j, p));
}

TEST_CASE("C(i,j) closed form") {
  for (int p : {3, 5, 7, 11, 13}) {
    const auto r = cij_closed_form_check(p);
    CHECK(r.passed());
    int expected = 0;
    for (int i = 1; i < p; ++i)
      for (int j = 1; i + j <= p - 1; ++j) ++expected;
    CHECK(r.checked == expected);
  }
  CHECK(cij_closed_form_check(5).checked == 6);
  CHECK(cij_closed_form_check(3).checked == 1);
}

TEST_CASE("binomials") {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == static_cast<std::int64_t>(oracle::binom(n, k)));
  CHECK_THROWS_AS(binomial(63, 3), PreconditionError);
}

TEST_CASE("non-residues and the geometric sum") {
  CHECK(quadratic_nonresidues(3) == std::vector<int>{2});
  CHECK(quadratic_nonresidues(5) == std::vector<int>{2, 3});
  CHECK(quadratic_nonresidues(7) == std::vector<int>{3, 5, 6});
  for (int p : {5, 7, 11, 13}) {
    for (int h : quadratic_nonresidues(p)) {
      CHECK_FALSE(oracle::is_square_mod(h, p));
      for (int t = 1; t < p; ++t) {
        const int ht2 = h * t * t % p;
        CHECK((1 - ht2 + p) % p != 0);
        int sum = 0;
        for (int s = 1; s <= (p - 1) / 2; ++s) sum = (sum + oracle::pow_mod(ht2, s - 1, p)) % p;
        CHECK(sum == 2 * oracle::inv_mod((1 - ht2 + p) % p, p) % p);
      }
    }
    const auto r = geometric_sum_check(p);
    CHECK(r.passed());
    CHECK(r.checked == static_cast<int>(quadratic_nonresidues(p).size()) * (p - 1));
  }
  for (int p : {5, 7, 11, 13})
    for (int a = 1; a < p; ++a) CHECK(inverse_mod_p(a, p) == oracle::inv_mod(a, p));
}

TEST_CASE("power expansion") {
  PcGroup h = group("heisenberg-5");
  CHECK(miech_expansion_check(h, h.generator(1), h.generator(2)));
  std::mt19937_64 rng(9);
  for (const char* id : {"cpk2-5-2", "sg-3_6-34", "thin5-A1", "thin5-A2"}) {
    PcGroup g = group(id);
    for (int k = 0; k < 40; ++k)
      CHECK(miech_expansion_check(g, g.from_index(rng() % g.order()), g.from_index(rng() % g.order())));
  }
}

TEST_CASE("quadratic pairs") {
  PcGroup s = group("sg-3_5-3");
  const auto c = find_quadratic_pair(s, s.generator(1));
  CHECK(c.h == 2);
  CHECK(is_generating_pair(s, c.x, c.y));
  const auto all = all_quadratic_pairs(s, s.generator(1), 1000);
  REQUIRE_FALSE(all.empty());
  CHECK(all.front().y == c.y);

  PcGroup a1 = group("thin5-A1");
  const auto w = find_quadratic_pair(a1, a1.multiply(a1.generator(1), a1.generator(2)));
  CHECK((w.h == 2 || w.h == 3));
  CHECK(w.has_coordinates);

  CHECK_THROWS_AS(find_quadratic_pair(group("elab-5"), group("elab-5").generator(1)), PreconditionError);
  CHECK_THROWS_AS(find_quadratic_pair(a1, a1.generator(3)), PreconditionError);
}

TEST_CASE("power congruence") {
  for (const char* id : {"thin5-A1", "thin5-A2"}) {
    PcGroup g = group(id);
    REQUIRE(derived_powers_below_p_plus_one(g));
    for (const auto& cert : all_quadratic_pairs(g, g.generator(1), 20))
      for (int t = 0; t < 5; ++t) CHECK(power_congruence_check(g, cert, t));
  }
}

TEST_CASE("collision and companion checks") {
  PcGroup g = group("thin5-A1");
  const auto cert = find_quadratic_pair(g, g.generator(1));
  for (int t0 = 0; t0 < 5; ++t0) {
    const auto r = collision_scan(g, cert, t0);
    CHECK(r.bound_satisfied);
    CHECK(r.matches.size() <= 3);
    CHECK(std::find(r.matches.begin(), r.matches.end(), t0) != r.matches.end());
  }
  std::mt19937_64 rng(4);
  const auto d = derived_subgroup(g);
  for (const auto& m : maximal_subgroups(g)) {
    GroupElement a;
    do {
      a = g.from_index(rng() % g.order());
    } while (!m.subgroup.contains(g, a) || d.contains(g, a));
    CHECK(companion_check(g, m.subgroup, a, a));
  }
  for (int c : coincidence_counts(g)) CHECK(c <= 2);
  PcGroup s = group("sg-3_5-3");
  const auto r = collision_scan(s, find_quadratic_pair(s, s.generator(1)), 0);
  CHECK(std::find(r.matches.begin(), r.matches.end(), 0) != r.matches.end());
  PcGroup a3 = group("thin5-A3");
  if (lower_central_series(a3).terms[4].log_order() < 2)
    CHECK_THROWS_AS(collision_scan(a3, find_quadratic_pair(a3, a3.generator(1)), 0), PreconditionError);
}

TEST_CASE("quadratic pair witnesses match a scan of every element") {
  for (const char* id : {"sg-3_5-3", "sg-3_6-34", "thin3-6-a", "thin3-6-f"}) {
    CAPTURE(id);
    PcGroup g = group(id);
    const auto lcs = lower_central_series(g);
    const Subgroup g5 = lcs.terms.size() > 4 ? lcs.terms[4] : Subgroup::trivial(g);
    const auto phi = frattini(g);
    for (const auto& x : {g.generator(1), g.generator(2), g.multiply(g.generator(1), g.generator(2))}) {
      std::set<std::pair<GroupElement, int>> expected;
      for (std::uint64_t i = 0; i < g.order(); ++i) {
        const auto y = g.from_index(i);
        if (!is_generating_pair(g, x, y)) continue;
        const auto yx = g.commutator(y, x);
        const auto a = g.commutator(g.commutator(yx, x), x);
        const auto b = g.commutator(g.commutator(yx, y), y);
        for (int h : {2})
          if (g5.contains(g, g.multiply(g.inverse(a), g.power(b, h)))) expected.emplace(y, h);
      }
      std::set<std::pair<GroupElement, int>> found;
      for (const auto& c : all_quadratic_pairs(g, x, 100000)) found.emplace(c.y, c.h);
      // the search visits one normalized representative direction per maximal subgroup
      for (const auto& [y, h] : found) CHECK(expected.count({y, h}) == 1);
      std::size_t reachable = 0;
      for (const auto& [y, h] : expected) {
        const auto v = frattini_coordinates(g, phi, y);
        reachable += normalize_direction(v, 3) == v;
      }
      CHECK(found.size() == reachable);
    }
  }
}
