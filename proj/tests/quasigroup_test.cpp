#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "quasienum/enumerate.hpp"
#include "quasienum/quasigroup.hpp"

using namespace quasienum;

namespace {

AffineTriple triple(const AbelianGroup& g, std::int64_t phi, std::int64_t psi, std::uint64_t c) {
  return AffineTriple(Endomorphism::scalar(g, phi), Endomorphism::scalar(g, psi), g.element({c}));
}

CayleyTable relabel(const CayleyTable& t, const std::vector<std::uint32_t>& sigma) {
  CayleyTable out = t;
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = 0; j < t.n; ++j) out(sigma[i], sigma[j]) = sigma[t(i, j)];
  return out;
}

// Plain search over all n! bijections, no pruning.
bool isomorphic_by_permutations(const CayleyTable& a, const CayleyTable& b) {
  std::vector<std::uint32_t> sigma(a.n);
  std::iota(sigma.begin(), sigma.end(), 0u);
  do {
    if (relabel(a, sigma) == b) return true;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return false;
}

}  // namespace

TEST_CASE("build_quasigroup") {
  const auto c3 = parse_group("C3");
  CHECK(build_quasigroup(triple(c3, 1, 1, 0)) == CayleyTable({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  CHECK(build_quasigroup(triple(c3, 1, 2, 0)) == CayleyTable({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}));
  const auto c2 = parse_group("C2");
  CHECK(build_quasigroup(triple(c2, 1, 1, 1)) == CayleyTable({{1, 0}, {0, 1}}));

  const auto g = parse_group("C4xC2");
  const AffineTriple t(Endomorphism(g, {{1, 2}, {1, 1}}), Endomorphism::identity(g), g.element({1, 1}));
  const auto table = build_quasigroup(t);
  const auto els = g.elements();
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = 0; j < els.size(); ++j)
      CHECK(table(i, j) == g.index_of(g.add(g.add(apply(t.phi, els[i]), apply(t.psi, els[j])), t.c)));
}

TEST_CASE("triples must use automorphisms of one group") {
  const auto g = parse_group("C4");
  CHECK_THROWS_AS(AffineTriple(Endomorphism::scalar(g, 2), Endomorphism::identity(g), g.zero()), GroupError);
  CHECK_THROWS_AS(
      AffineTriple(Endomorphism::identity(g), Endomorphism::identity(parse_group("C2xC2")), g.zero()),
      GroupError);
  CHECK_THROWS_AS(AffineTriple(Endomorphism::identity(g), Endomorphism::identity(g), GroupElement{{4}}),
                  GroupError);
}

TEST_CASE("latin and medial checks") {
  const auto c3 = parse_group("C3");
  const auto add = build_quasigroup(triple(c3, 1, 1, 0));
  CHECK(is_latin(add));
  CHECK(is_medial(add));
  CHECK(is_medial(build_quasigroup(triple(c3, 1, 2, 0))));
  CHECK_FALSE(is_latin(CayleyTable({{0, 0}, {1, 1}})));
  CHECK_FALSE(is_latin(CayleyTable({{0, 2}, {1, 0}})));
  // x*y = x - y + 1 on C5 is medial; a non-commuting pair on C2xC2 is not.
  CHECK(is_medial(build_quasigroup(triple(parse_group("C5"), 1, -1, 1))));
  const auto v4 = parse_group("C2xC2");
  const AffineTriple nc(Endomorphism(v4, {{0, 1}, {1, 0}}), Endomorphism(v4, {{1, 1}, {0, 1}}), v4.zero());
  CHECK(is_latin(build_quasigroup(nc)));
  CHECK_FALSE(is_medial(build_quasigroup(nc)));
}

TEST_CASE("isomorphism of affine triples") {
  const auto c3 = parse_group("C3");
  CHECK(is_isomorphic_affine(triple(c3, 1, 1, 0), triple(c3, 1, 1, 0)));
  CHECK(is_isomorphic_affine(triple(c3, 1, 1, 0), triple(c3, 1, 1, 1)));
  CHECK_FALSE(is_isomorphic_affine(triple(c3, 1, 2, 0), triple(c3, 2, 1, 0)));
  CHECK_FALSE(is_isomorphic_affine(triple(c3, 2, 2, 0), triple(c3, 2, 2, 1)));
  CHECK(is_isomorphic_affine(triple(c3, 2, 2, 1), triple(c3, 2, 2, 2)));
  CHECK_THROWS_AS(is_isomorphic_affine(triple(c3, 1, 1, 0), triple(parse_group("C5"), 1, 1, 0)), GroupError);
}

TEST_CASE("brute-force oracle") {
  const auto c3 = parse_group("C3");
  const auto a = build_quasigroup(triple(c3, 1, 2, 0));
  const auto b = build_quasigroup(triple(c3, 2, 1, 0));
  CHECK(brute_force_isomorphic(a, a));
  CHECK_FALSE(brute_force_isomorphic(a, b));
  CHECK(brute_force_isomorphic(build_quasigroup(triple(c3, 1, 1, 0)), build_quasigroup(triple(c3, 1, 1, 1))));

  const auto g = parse_group("C4xC2");
  const AffineTriple t(Endomorphism(g, {{1, 2}, {1, 1}}), Endomorphism::scalar(g, 3), g.element({1, 0}));
  const auto table = build_quasigroup(t);
  std::vector<std::uint32_t> sigma(8);
  std::iota(sigma.begin(), sigma.end(), 0u);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(sigma.begin(), sigma.end(), rng);
    CHECK(brute_force_isomorphic(table, relabel(table, sigma)));
  }
  CHECK_THROWS_AS(brute_force_isomorphic(a, table), std::invalid_argument);
  CayleyTable huge;
  huge.n = kBruteForceCap + 1;
  huge.cells.assign(huge.n * huge.n, 0);
  CHECK_THROWS_AS(brute_force_isomorphic(huge, huge), ResourceLimitError);
}

TEST_CASE("pruned oracle agrees with the plain permutation search") {
  for (const char* d : {"C2", "C3", "C4", "C2xC2", "C5"}) {
    const auto reps = classify_representatives(parse_group(d));
    std::vector<CayleyTable> tables;
    for (const auto& r : reps) tables.push_back(build_quasigroup(AffineTriple(r.phi, r.psi, r.c)));
    for (std::size_t i = 0; i < tables.size(); ++i)
      for (std::size_t j = i; j < tables.size(); ++j)
        CHECK(brute_force_isomorphic(tables[i], tables[j]) == isomorphic_by_permutations(tables[i], tables[j]));
  }
}

TEST_CASE("affine isomorphism criterion agrees with the oracle on representative pairs, |G| <= 6") {
  for (std::uint64_t n = 1; n <= 6; ++n)
    for (const auto& g : abelian_groups_of_order(n)) {
      std::vector<AffineTriple> triples;
      std::vector<CayleyTable> tables;
      for (const auto& r : classify_representatives(g)) {
        triples.emplace_back(r.phi, r.psi, r.c);
        tables.push_back(build_quasigroup(triples.back()));
      }
      for (std::size_t i = 0; i < triples.size(); ++i)
        for (std::size_t j = 0; j < triples.size(); ++j) {
          CHECK(is_isomorphic_affine(triples[i], triples[j]) == (i == j));
          CHECK(brute_force_isomorphic(tables[i], tables[j]) == (i == j));
        }
    }
}

TEST_CASE("affine isomorphism criterion agrees with the oracle on all triple pairs, |G| <= 4") {
  for (const char* d : {"C2", "C3", "C4", "C2xC2"}) {
    const auto g = parse_group(d);
    const auto a = aut_group(g);
    std::vector<AffineTriple> triples;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        for (const auto& c : g.elements()) triples.emplace_back(a.member(i), a.member(j), c);
    std::vector<CayleyTable> tables;
    for (const auto& t : triples) tables.push_back(build_quasigroup(t));
    for (std::size_t x = 0; x < triples.size(); x += 3)
      for (std::size_t y = 0; y < triples.size(); ++y)
        CHECK(is_isomorphic_affine(triples[x], triples[y]) == brute_force_isomorphic(tables[x], tables[y]));
  }
}

TEST_CASE("text format round trip") {
  const auto t = build_quasigroup(triple(parse_group("C5"), 2, 3, 1));
  std::stringstream ss;
  write_table(ss, t);
  CHECK(ss.str().rfind("5\n", 0) == 0);
  CHECK(read_table(ss) == t);
  for (const char* bad : {"", "2\n0 1\n1", "2\n0 1\n1 2\n", "2\n0 1\n1 0\n5", "-1"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_table(in), std::invalid_argument);
  }
  std::istringstream empty("0\n");
  CHECK(read_table(empty).n == 0);
  CHECK(to_json(CayleyTable({{1, 0}, {0, 1}})) == nlohmann::json::parse("[[1,0],[0,1]]"));
}
