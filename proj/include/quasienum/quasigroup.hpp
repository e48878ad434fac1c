#ifndef QUASIENUM_QUASIGROUP_HPP
#define QUASIENUM_QUASIGROUP_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "quasienum/abelian.hpp"
#include "quasienum/endo.hpp"

namespace quasienum {

/// Multiplication table on {0, ..., n-1}, row-major.
struct CayleyTable {
  std::size_t n = 0;
  std::vector<std::uint32_t> cells;

  CayleyTable() = default;
  explicit CayleyTable(std::vector<std::vector<std::uint32_t>> rows);

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return cells[i * n + j]; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return cells[i * n + j]; }
  std::vector<std::vector<std::uint32_t>> rows() const;

  friend bool operator==(const CayleyTable&, const CayleyTable&) = default;
};

/// x * y = phi(x) + psi(y) + c over the group of phi and psi.
struct AffineTriple {
  /// Throws GroupError unless phi and psi are automorphisms of one group
  /// and c belongs to it.
  AffineTriple(Endomorphism phi, Endomorphism psi, GroupElement c);

  const AbelianGroup& group() const { return phi.group(); }

  Endomorphism phi;
  Endomorphism psi;
  GroupElement c;
};

/// Elements are numbered by their mixed-radix index.
CayleyTable build_quasigroup(const AffineTriple& t);

bool is_latin(const CayleyTable& t);
/// (x*y)*(u*v) = (x*u)*(y*v) for all x, y, u, v.
bool is_medial(const CayleyTable& t);

/// Decided by searching gamma in Aut(G) with phi2 = gamma phi1 gamma^-1,
/// psi2 = gamma psi1 gamma^-1 and c2 in gamma(c1 + Im(1 - phi1 - psi1)).
/// Throws GroupError if the triples live over different groups.
bool is_isomorphic_affine(const AffineTriple& t1, const AffineTriple& t2,
                          std::uint64_t aut_budget = kDefaultAutBudget);

/// Largest order accepted by brute_force_isomorphic.
inline constexpr std::size_t kBruteForceCap = 10;

/// Backtracking search for a bijection s with s(a(i, j)) = b(s(i), s(j)).
/// Throws std::invalid_argument on an order mismatch and ResourceLimitError
/// above kBruteForceCap.
bool brute_force_isomorphic(const CayleyTable& a, const CayleyTable& b);

/// Text format: n on the first line, then n rows of n indices.
void write_table(std::ostream& out, const CayleyTable& t);
CayleyTable read_table(std::istream& in);

nlohmann::json to_json(const CayleyTable& t);

}  // namespace quasienum

#endif  // QUASIENUM_QUASIGROUP_HPP
