#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thinville/catalog.hpp"

using namespace thinville;

namespace {

const char* kH5 = R"(# Heisenberg group of order 125
p 5
n 3
comm 2 1 = g3^1
)";

GroupElement random_element(const PcGroup& g, std::mt19937_64& rng) {
  return g.from_index(std::uniform_int_distribution<std::uint64_t>(0, g.order() - 1)(rng));
}

}  // namespace

TEST_CASE("parse the Heisenberg presentation") {
  const auto pres = parse_presentation(kH5);
  CHECK(pres.prime() == 5);
  CHECK(pres.rank() == 3);
  CHECK(pres.commutator(2, 1) == Word{{3, 1}});
  CHECK(pres.power(1).empty());
  CHECK(parse_presentation(format_presentation(pres)) == pres);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_presentation("p 4\nn 2\n"), doctest::Contains("non-prime modulus"), ParseError);
  CHECK_THROWS_WITH_AS(parse_presentation("p 5\nn 2\npow 1 = g1^1\n"),
                       doctest::Contains("word index not above base"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 5\nn 3\ncomm 1 2 = g3^1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 5\nn 3\ncomm 2 1 = g3^\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 5\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 5\nn 2\nbogus\n"), ParseError);
}

TEST_CASE("consistency") {
  CHECK(check_consistency(parse_presentation(kH5)).consistent);
  CHECK(check_consistency(builtin("elab-5")).consistent);
  CHECK(check_consistency(builtin("cpk2-5-2")).consistent);

  // [g2,g1] = g3^2 is another valid class-2 group; the checker decides.
  auto mutated = parse_presentation(kH5);
  mutated.set_commutator(2, 1, {{3, 2}});
  CHECK(check_consistency(mutated).consistent);

  // g1^p = g2 with [g2,g1] = g3 contradicts g1 commuting with its own power.
  PcPresentation bad(5, 3);
  bad.set_power(1, {{2, 1}});
  bad.set_commutator(2, 1, {{3, 1}});
  const auto report = check_consistency(bad);
  CHECK_FALSE(report.consistent);
  CHECK_FALSE(report.failures.empty());
  CHECK_THROWS_AS(PcGroup{bad}, PreconditionError);
}

TEST_CASE("collection in H5") {
  PcGroup h(parse_presentation(kH5));
  const auto g1 = h.generator(1), g2 = h.generator(2), g3 = h.generator(3);
  const std::vector<Term> ba{{2, 1}, {1, 1}};
  CHECK(h.collect(ba) == h.element({1, 1, 1}));
  CHECK(h.collect(std::vector<Term>{}).is_identity());
  std::vector<Term> w;
  for (int k = 0; k < 5; ++k) w.insert(w.end(), {{1, 1}, {2, 1}});
  CHECK(h.collect(w).is_identity());
  CHECK(h.commutator(g2, g1) == g3);
  CHECK(h.power(g1, 5).is_identity());
  CHECK(h.element_order(h.identity()) == 1);
  CHECK(h.element_order(g1) == 5);
  const std::vector<GroupElement> one{g1};
  CHECK(h.left_normed_commutator(g2, one) == g3);
  const std::vector<GroupElement> two{g1, g1};
  CHECK(h.left_normed_commutator(g2, two).is_identity());
}

TEST_CASE("orders in the abelian towers") {
  PcGroup c(builtin("cpk2-5-2"));
  CHECK(c.order() == 625);
  CHECK(c.element_order(c.generator(1)) == 25);
  CHECK(c.element_order(c.generator(2)) == 25);
  CHECK(c.element_order(c.generator(3)) == 5);
}

TEST_CASE("group axioms on random elements") {
  std::mt19937_64 rng(11);
  for (const char* id : {"heisenberg-5", "cpk2-5-2", "cpk2-3-3", "heisenberg-7"}) {
    PcGroup g(builtin(id));
    for (int k = 0; k < 100; ++k) {
      const auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      CHECK(g.multiply(a, g.inverse(a)).is_identity());
      CHECK(g.multiply(g.inverse(a), a).is_identity());
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.conjugate(a, b) == g.multiply(g.inverse(b), g.multiply(a, b)));
      CHECK(g.commutator(a, b) == g.multiply(g.inverse(a), g.conjugate(a, b)));
      CHECK(g.power(a, -3) == g.inverse(g.power(a, 3)));
      CHECK(g.power(a, static_cast<long long>(g.element_order(a))).is_identity());
      CHECK(g.from_index(g.index_of(a)) == a);
    }
  }
}

TEST_CASE("collection agrees with products of normal forms") {
  std::mt19937_64 rng(12);
  for (const auto& e : load_catalog(catalog_directory())) {
    PcGroup g(e.presentation);
    for (int k = 0; k < 20; ++k) {
      const auto a = random_element(g, rng), b = random_element(g, rng);
      auto w = a.to_word();
      const auto wb = b.to_word();
      w.insert(w.end(), wb.begin(), wb.end());
      CHECK(g.collect(w) == g.multiply(a, b));
      auto inv = b.to_word();
      std::reverse(inv.begin(), inv.end());
      for (auto& t : inv) t.exponent = -t.exponent;
      CHECK(g.collect(inv) == g.inverse(b));
    }
  }
}

TEST_CASE("every element of a small group is reached exactly once") {
  PcGroup g(builtin("heisenberg-3"));
  oracle::Table t(g);
  std::vector<int> seen(t.size(), 0);
  for (std::uint64_t a = 0; a < t.size(); ++a)
    for (std::uint64_t b = 0; b < t.size(); ++b) ++seen[t.mul(a, b)];
  for (auto s : seen) CHECK(s == static_cast<int>(t.size()));
}
