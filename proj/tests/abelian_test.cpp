#include "doctest.h"

#include <map>
#include <set>

#include "quasienum/abelian.hpp"

using namespace quasienum;

namespace {

// Number of integer partitions of k, by the usual recurrence over part sizes.
std::uint64_t partition_count(unsigned k) {
  std::vector<std::uint64_t> p(k + 1, 0);
  p[0] = 1;
  for (unsigned part = 1; part <= k; ++part)
    for (unsigned n = part; n <= k; ++n) p[n] += p[n - part];
  return p[k];
}

std::uint64_t abelian_group_count(std::uint64_t n) {
  std::uint64_t c = 1;
  for (std::uint64_t p = 2; n > 1; ++p) {
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    c *= partition_count(k);
  }
  return c;
}

}  // namespace

TEST_CASE("primes and factorization") {
  CHECK(is_prime(2));
  CHECK(is_prime(127));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(91));
  CHECK(factorize(96) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 5}, {3, 1}});
  CHECK(factorize(1).empty());
  CHECK(ipow(3, 4) == 81);
}

TEST_CASE("descriptors are canonical") {
  CHECK(parse_group("C4xC2xC3").descriptor() == "C4xC2xC3");
  CHECK(parse_group("C3xC2xC4").descriptor() == "C4xC2xC3");
  CHECK(parse_group(" c2 X c4 ").descriptor() == "C4xC2");
  CHECK(parse_group("C6").descriptor() == "C2xC3");
  CHECK(parse_group("C12*C2").descriptor() == "C4xC2xC3");
  CHECK(parse_group("C2^3").descriptor() == "C2xC2xC2");
  CHECK(parse_group("C1").descriptor() == "C1");
  CHECK(parse_group("C1").is_trivial());
  CHECK(parse_group("C1xC5").descriptor() == "C5");
  CHECK(make_group({{3, 1}, {2, 1}, {2, 2}}).descriptor() == "C4xC2xC3");
}

TEST_CASE("malformed descriptors are rejected") {
  for (const char* bad : {"", "C0", "C4x", "xC4", "D4", "C", "C2^0", "C-2", "C4xxC2", "C2^"})
    CHECK_THROWS_AS(parse_group(bad), GroupError);
  CHECK_THROWS_AS(make_group({{4, 1}}), GroupError);
  CHECK_THROWS_AS(make_group({{2, 0}}), GroupError);
}

TEST_CASE("group structure queries") {
  const auto g = parse_group("C4xC2xC3");
  CHECK(g.order() == 24);
  CHECK(g.rank() == 3);
  CHECK(g.primes() == std::vector<std::uint64_t>{2, 3});
  CHECK(g.primary_component(2).descriptor() == "C4xC2");
  CHECK(g.primary_component(3).descriptor() == "C3");
  CHECK(g.primary_component(5).is_trivial());
  CHECK_FALSE(g.is_cyclic());
  CHECK(parse_group("C8xC3").is_cyclic());
  CHECK(parse_group("C8").is_prime_power());
  CHECK_FALSE(g.is_prime_power());
  CHECK(direct_product(parse_group("C4xC2"), parse_group("C3")) == g);
}

TEST_CASE("abelian groups of order n: count and order") {
  for (std::uint64_t n = 1; n <= 128; ++n) {
    const auto groups = abelian_groups_of_order(n);
    CHECK(groups.size() == abelian_group_count(n));
    std::set<std::string> seen;
    for (const auto& g : groups) {
      CHECK(g.order() == n);
      seen.insert(g.descriptor());
    }
    CHECK(seen.size() == groups.size());
  }
  const auto g8 = abelian_groups_of_order(8);
  REQUIRE(g8.size() == 3);
  CHECK(g8[0].descriptor() == "C8");
  CHECK(g8[1].descriptor() == "C4xC2");
  CHECK(g8[2].descriptor() == "C2xC2xC2");
  CHECK(abelian_groups_of_order(1).front().descriptor() == "C1");
  CHECK_THROWS_AS(abelian_groups_of_order(0), GroupError);
}

TEST_CASE("partitions") {
  CHECK(partitions(4) == std::vector<std::vector<unsigned>>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
  for (unsigned k = 0; k <= 10; ++k) CHECK(partitions(k).size() == partition_count(k));
}

TEST_CASE("group axioms hold exhaustively on small groups") {
  for (const char* d : {"C1", "C2", "C4xC2", "C3xC3", "C2xC3", "C2xC2xC2"}) {
    const auto g = parse_group(d);
    const auto els = g.elements();
    CHECK(els.size() == g.order());
    for (const auto& a : els) {
      CHECK(g.add(a, g.zero()) == a);
      CHECK(g.add(a, g.neg(a)) == g.zero());
      for (const auto& b : els) {
        CHECK(g.add(a, b) == g.add(b, a));
        CHECK(g.sub(g.add(a, b), b) == a);
        for (const auto& c : els) CHECK(g.add(g.add(a, b), c) == g.add(a, g.add(b, c)));
      }
    }
  }
}

TEST_CASE("element indices are mixed radix with the last coordinate fastest") {
  const auto g = parse_group("C4xC2xC3");
  CHECK(g.index_of(g.element({0, 0, 1})) == 1);
  CHECK(g.index_of(g.element({0, 1, 0})) == 3);
  CHECK(g.index_of(g.element({1, 0, 0})) == 6);
  for (std::uint64_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
  CHECK_THROWS_AS(g.element({4, 0, 0}), GroupError);
  CHECK_THROWS_AS(g.element({0, 0}), GroupError);
  CHECK_THROWS_AS(g.element_at(24), GroupError);
}

TEST_CASE("subgroups and cosets") {
  const auto g = parse_group("C4xC2");
  const auto u = Subgroup::generated_by(g, {g.element({2, 0})});
  CHECK(u.size() == 2);
  CHECK(u.contains(g.zero()));
  CHECK(Subgroup::whole(g).size() == 8);
  CHECK(Subgroup::trivial(g).size() == 1);
  CHECK_THROWS_AS(Subgroup(g, {0, 2}), GroupError);  // {0, (1,0)} is not closed

  const auto dec = cosets(g, u);
  CHECK(dec.representatives.size() == 4);
  std::map<std::size_t, std::size_t> sizes;
  for (std::uint64_t x = 0; x < g.order(); ++x) ++sizes[dec.class_of[x]];
  for (const auto& [cls, n] : sizes) CHECK(n == 2);
  for (std::size_t c = 0; c < dec.representatives.size(); ++c) {
    const auto rep = g.index_of(dec.representatives[c]);
    CHECK(dec.class_of[rep] == c);
    for (std::uint64_t x = 0; x < rep; ++x) CHECK(dec.class_of[x] != c);
  }
  CHECK(dec.representative_of(g, g.element({3, 1})) == g.element({1, 1}));
}
