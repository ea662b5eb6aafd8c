#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thinville/beauville.hpp"
#include "thinville/catalog.hpp"

using namespace thinville;

namespace {

PcGroup group(const std::string& id) { return PcGroup(resolve(id).presentation); }

GroupElement pick(const PcGroup& g, std::mt19937_64& rng) { return g.from_index(rng() % g.order()); }

// A random generating pair, by rejection.
std::pair<GroupElement, GroupElement> random_pair(const PcGroup& g, std::mt19937_64& rng) {
  while (true) {
    auto x = pick(g, rng), y = pick(g, rng);
    if (is_generating_pair(g, x, y)) return {x, y};
  }
}

}  // namespace

TEST_CASE("generating pairs in H5") {
  PcGroup h = group("heisenberg-5");
  const auto g1 = h.generator(1), g2 = h.generator(2), g3 = h.generator(3);
  CHECK(is_generating_pair(h, g1, g2));
  CHECK_FALSE(is_generating_pair(h, g1, h.multiply(g1, g3)));
  CHECK_FALSE(is_generating_pair(h, g3, g2));
}

TEST_CASE("fingerprints in C5 x C5") {
  PcGroup e = group("elab-5");
  const auto x = e.generator(1), y = e.generator(2);
  const auto f = sigma_fingerprint(e, x, y);
  CHECK(f.socles.size() == 3);
  CHECK_THROWS_AS(socle_generator(e, e.identity()), PreconditionError);

  auto el = [&](int a, int b) { return e.element({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}); };
  const auto t1 = make_triple(e, el(1, 0), el(0, 1));
  // (1,2)(1,3) = (2,0) shares the direction of (1,0)
  const auto shared = make_triple(e, el(1, 2), el(1, 3));
  CHECK(shared.xy == el(2, 0));
  CHECK_FALSE(is_beauville_pair(e, t1, shared));
  const auto t2 = make_triple(e, el(1, 2), el(1, 4));
  CHECK(is_beauville_pair(e, t1, t2));
  CHECK_FALSE(is_beauville_pair(e, t1, t1));
  CHECK_THROWS_AS(is_beauville_pair(e, make_triple(e, el(1, 0), el(2, 0)), t2), PreconditionError);
}

TEST_CASE("C3 x C3 has no Beauville pair at all") {
  PcGroup e = group("elab-3");
  oracle::Table t(e);
  for (std::uint32_t a = 1; a < 9; ++a)
    for (std::uint32_t b = 1; b < 9; ++b) {
      if (!is_generating_pair(e, t.element(a), t.element(b))) continue;
      const auto t1 = make_triple(e, t.element(a), t.element(b));
      for (std::uint32_t c = 1; c < 9; ++c)
        for (std::uint32_t d = 1; d < 9; ++d)
          if (is_generating_pair(e, t.element(c), t.element(d)))
            CHECK_FALSE(is_beauville_pair(e, t1, make_triple(e, t.element(c), t.element(d))));
    }
}

TEST_CASE("fingerprint disjointness matches the element-set Sigma") {
  std::mt19937_64 rng(5);
  for (const char* id : {"heisenberg-5", "heisenberg-3", "sg-3_5-3", "sg-3_6-37", "sg-3_6-40", "cpk2-5-2"}) {
    CAPTURE(id);
    PcGroup g = group(id);
    oracle::Table t(g);
    ConjugacyCanonizer canon(g);
    for (int k = 0; k < 50; ++k) {
      const auto [x1, y1] = random_pair(g, rng);
      const auto [x2, y2] = random_pair(g, rng);
      const auto s1 = t.sigma(static_cast<std::uint32_t>(t.index(x1)), static_cast<std::uint32_t>(t.index(y1)));
      const auto s2 = t.sigma(static_cast<std::uint32_t>(t.index(x2)), static_cast<std::uint32_t>(t.index(y2)));
      const bool disjoint = fingerprints_disjoint(sigma_fingerprint(g, canon, x1, y1),
                                                  sigma_fingerprint(g, canon, x2, y2));
      CHECK(disjoint == oracle::Table::meet_trivially(s1, s2));
    }
  }
}

TEST_CASE("fingerprint of a triple does not depend on how it is listed") {
  std::mt19937_64 rng(6);
  PcGroup g = group("sg-3_6-34");
  for (int k = 0; k < 30; ++k) {
    const auto [x, y] = random_pair(g, rng);
    const auto xy = g.multiply(x, y);
    const auto f = sigma_fingerprint(g, x, y);
    // {y, (xy)^-1... } lists the same three cyclic subgroups up to conjugacy
    CHECK(f == sigma_fingerprint(g, y, g.inverse(xy)));
    CHECK(f == sigma_fingerprint(g, g.inverse(xy), x));
    CHECK(f == sigma_fingerprint(g, g.conjugate(x, xy), g.conjugate(y, xy)));
  }
}

TEST_CASE("structure search on small groups") {
  SearchOptions ex;
  ex.mode = SearchMode::exhaustive;
  const auto c5 = find_beauville_structure(group("elab-5"), ex);
  CHECK(c5.outcome == Outcome::found);
  CHECK(verify_certificate(group("elab-5"), c5));
  CHECK(find_beauville_structure(group("elab-3"), ex).outcome == Outcome::refuted);
  const auto s = find_beauville_structure(group("sg-3_5-3"), ex);
  CHECK(s.outcome == Outcome::found);
  CHECK(verify_certificate(group("sg-3_5-3"), s));
  CHECK(find_beauville_structure(group("thin3-5-a"), ex).outcome == Outcome::refuted);

  SearchOptions tiny = ex;
  tiny.budget = 10;
  CHECK(find_beauville_structure(group("sg-3_5-3"), tiny).outcome == Outcome::inconclusive);
}

TEST_CASE("tampered certificates are rejected") {
  PcGroup e = group("elab-5");
  auto cert = find_beauville_structure(e);
  REQUIRE(cert.outcome == Outcome::found);
  cert.second = cert.first;
  CHECK_FALSE(verify_certificate(e, cert));
}

TEST_CASE("abelian criterion") {
  CHECK(catanese_check(5));
  CHECK(catanese_check(25));
  CHECK_FALSE(catanese_check(3));
  CHECK_FALSE(catanese_check(9));
  CHECK_FALSE(catanese_check(1));
  CHECK_FALSE(catanese_check(6));
}

TEST_CASE("omega criterion") {
  CHECK(omega_negative_test(group("thin5-A4-neg")));
  CHECK_FALSE(omega_negative_test(group("thin5-A4-pos")));
  CHECK_THROWS_AS(omega_negative_test(group("cpk2-5-2")), PreconditionError);
}

TEST_CASE("lifting from quotients") {
  PcGroup c = group("cpk2-5-2");
  const auto structure = find_beauville_structure(group("elab-5"));
  REQUIRE(structure.outcome == Outcome::found);

  // N = 1
  const auto cert = find_beauville_structure(c);
  REQUIRE(cert.outcome == Outcome::found);
  CHECK(lift_check(c, Subgroup::trivial(c), *cert.first, *cert.second));

  // Modulo the agemo every generator of order 25 drops to order 5.
  const auto n = agemo(c);
  Quotient q(c, n);
  const auto lifted = [&](const GeneratingTriple& t) {
    return make_triple(c, q.lift(t.x), q.lift(t.y));
  };
  REQUIRE(q.group().order() == 25);
  const auto qs = find_beauville_structure(q.group());
  REQUIRE(qs.outcome == Outcome::found);
  CHECK_FALSE(lift_check(c, n, lifted(*qs.first), lifted(*qs.second)));
}

TEST_CASE("case classifier") {
  const auto a1 = classify_theorem_a(group("thin5-A1"));
  CHECK(a1.tag == TheoremACaseTag::A1);
  CHECK(a1.predicted_beauville);
  const auto a2 = classify_theorem_a(group("thin5-A2"));
  CHECK(a2.tag == TheoremACaseTag::A2);
  CHECK(a2.predicted_beauville);
  const auto neg = classify_theorem_a(group("thin5-A4-neg"));
  CHECK(neg.tag == TheoremACaseTag::A4);
  CHECK(neg.exponent_p_maximal == 2);
  CHECK_FALSE(neg.predicted_beauville);
  CHECK(classify_theorem_a(group("sg-3_5-3")).tag == TheoremACaseTag::out_of_scope);
  CHECK(classify_theorem_a(group("heisenberg-5")).tag == TheoremACaseTag::out_of_scope);
}
