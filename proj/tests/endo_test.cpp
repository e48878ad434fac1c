#include "doctest.h"

#include <set>

#include "quasienum/endo.hpp"
#include "quasienum/report_io.hpp"

using namespace quasienum;

namespace {

// Every endomorphism of g, found by trying all images of the generators and
// keeping those that respect the generator orders.
std::vector<Endomorphism> all_endomorphisms_brute(const AbelianGroup& g) {
  const auto els = g.elements();
  const std::size_t r = g.rank();
  std::vector<Endomorphism> out;
  std::vector<std::size_t> choice(r, 0);
  while (true) {
    bool ok = true;
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t j = 0; j < r && ok; ++j) {
      // modulus(j) * image must vanish
      GroupElement acc = g.zero();
      for (std::uint64_t t = 0; t < g.modulus(j); ++t) acc = g.add(acc, els[choice[j]]);
      ok = acc == g.zero();
      for (std::size_t i = 0; i < r; ++i) m[i][j] = static_cast<std::int64_t>(els[choice[j]].coords[i]);
    }
    if (ok) out.emplace_back(g, m);
    std::size_t pos = 0;
    while (pos < r && ++choice[pos] == els.size()) choice[pos++] = 0;
    if (pos == r) break;
  }
  return out;
}

bool bijective_brute(const Endomorphism& f) {
  std::set<GroupElement> images;
  for (const auto& x : f.group().elements()) images.insert(apply(f, x));
  return images.size() == f.group().order();
}

}  // namespace

TEST_CASE("construction validates the homomorphism constraints") {
  const auto g = parse_group("C4xC2");
  CHECK_NOTHROW(Endomorphism(g, {{1, 2}, {1, 1}}));
  // The image of the order-2 generator in C4 must have order dividing 2.
  CHECK_THROWS_AS(Endomorphism(g, {{1, 1}, {0, 1}}), GroupError);
  CHECK_NOTHROW(Endomorphism(g, {{3, 0}, {1, 1}}));
  CHECK_THROWS_AS(Endomorphism(g, {{1, 0}}), GroupError);
  const auto h = parse_group("C2xC3");
  CHECK_THROWS_AS(Endomorphism(h, {{1, 1}, {0, 1}}), GroupError);
  CHECK(Endomorphism(h, {{3, 0}, {0, -1}}).entry(1, 1) == 2);
  CHECK(Endomorphism::scalar(g, -1).entry(0, 0) == 3);
  CHECK(Endomorphism::from_blocks(h, {{{1}}, {{2}}}) == Endomorphism(h, {{1, 0}, {0, 2}}));
}

TEST_CASE("endomorphism count matches a brute-force search") {
  for (const char* d : {"C1", "C2", "C4", "C2xC2", "C4xC2", "C2xC3", "C3xC3", "C9xC3", "C4xC2xC2"}) {
    const auto g = parse_group(d);
    const auto space = endo_space(g);
    CHECK(space->endomorphism_count() == all_endomorphisms_brute(g).size());
  }
}

TEST_CASE("homomorphism property and bijectivity criteria agree exhaustively") {
  for (const char* d : {"C2xC2", "C4xC2", "C2xC3", "C3xC3", "C8xC2", "C2xC2xC2", "C9xC3"}) {
    const auto g = parse_group(d);
    const auto els = g.elements();
    for (const auto& f : all_endomorphisms_brute(g)) {
      for (const auto& x : els)
        for (const auto& y : els) CHECK(apply(f, g.add(x, y)) == g.add(apply(f, x), apply(f, y)));
      const bool bij = bijective_brute(f);
      CHECK(is_automorphism(f) == bij);
      CHECK(f.space()->is_invertible(f.matrix()) == bij);
      CHECK(Endomorphism::from_key(f.space(), f.key()) == f);
    }
  }
}

TEST_CASE("composition, one_minus, inverse") {
  const auto g = parse_group("C4xC2xC3");
  const Endomorphism f(g, {{1, 2, 0}, {1, 1, 0}, {0, 0, 2}});
  const Endomorphism h(g, {{3, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& x : g.elements()) {
    CHECK(apply(compose(f, h), x) == apply(f, apply(h, x)));
    CHECK(apply(one_minus(f, h), x) == g.sub(g.sub(x, apply(f, x)), apply(h, x)));
  }
  REQUIRE(is_automorphism(f));
  CHECK(compose(inverse(f), f) == Endomorphism::identity(g));
  CHECK(compose(f, inverse(f)) == Endomorphism::identity(g));
  CHECK_THROWS_AS(inverse(Endomorphism::zero(g)), GroupError);
  CHECK(image(Endomorphism::scalar(g, 2)).size() == 6);
  CHECK_THROWS_AS(compose(f, Endomorphism::identity(parse_group("C4xC2"))), GroupError);
}

TEST_CASE("keys order endomorphisms lexicographically") {
  const auto g = parse_group("C4xC2");
  const auto endos = all_endomorphisms_brute(g);
  for (std::size_t i = 0; i < endos.size(); ++i)
    for (std::size_t j = 0; j < endos.size(); ++j) {
      const auto& a = endos[i].matrix().a;
      const auto& b = endos[j].matrix().a;
      CHECK((endos[i].key() < endos[j].key()) == std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
}

TEST_CASE("|Aut(G)|: formula, enumeration and the reference table agree") {
  for (const auto& row : fixture_rows()) {
    if (row.is_order_row() || row.order > 32) continue;
    const auto g = parse_group(row.descriptor);
    CAPTURE(row.descriptor);
    REQUIRE(row.aut_order);
    CHECK(aut_order(g) == *row.aut_order);
    if (row.order <= 16) CHECK(aut_group(g).size() == *row.aut_order);
  }
  // Groups beyond the enumerable range use the closed form only.
  CHECK(aut_order(parse_group("C2^6")) == Count("20158709760"));
  CHECK(aut_order(parse_group("C3^4")) == 24261120);
  CHECK(aut_order(parse_group("C5^3")) == 1488000);
  CHECK(aut_order(parse_group("C4xC2^4")) == 10321920);
}

TEST_CASE("aut_group members are exactly the bijective endomorphisms") {
  for (const char* d : {"C1", "C3", "C2xC2", "C4xC2", "C3xC3", "C2xC2xC2", "C2xC3"}) {
    const auto g = parse_group(d);
    const auto a = aut_group(g);
    std::set<EndoKey> expected;
    for (const auto& f : all_endomorphisms_brute(g))
      if (bijective_brute(f)) expected.insert(f.key());
    CHECK(std::set<EndoKey>(a.keys().begin(), a.keys().end()) == expected);
    CHECK(std::is_sorted(a.keys().begin(), a.keys().end()));
    CHECK(a.member(a.identity_index()) == Endomorphism::identity(g));
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a.compose_index(i, a.inverse_index(i)) == a.identity_index());
  }
}

TEST_CASE("budget refusal names the automorphism group order") {
  try {
    aut_group(parse_group("C2^6"));
    FAIL("expected a resource limit");
  } catch (const ResourceLimitError& e) {
    CHECK(e.requested() == Count("20158709760"));
  }
  CHECK_THROWS_AS(aut_group(parse_group("C2xC2xC2"), 100), ResourceLimitError);
  CHECK(aut_group(parse_group("C2xC2xC2"), 168).size() == 168);
}

TEST_CASE("json blocks") {
  const auto g = parse_group("C4xC2xC3");
  const Endomorphism f(g, {{1, 2, 0}, {1, 1, 0}, {0, 0, 2}});
  CHECK(to_json(f) == nlohmann::json::parse("[[[1,2],[1,1]],[[2]]]"));
}
