#ifndef QUASIENUM_ENDO_HPP
#define QUASIENUM_ENDO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "quasienum/abelian.hpp"

namespace quasienum {

using Count = boost::multiprecision::cpp_int;

/// Raised when a computation would exceed a configured size budget.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, Count requested)
      : std::runtime_error(what), requested_(std::move(requested)) {}
  const Count& requested() const { return requested_; }

 private:
  Count requested_;
};

/// Endomorphism matrices are stored inline; groups with more cyclic factors
/// than this are rejected.
inline constexpr std::size_t kMaxRank = 8;

/// Default cap on |Aut(G)|.
inline constexpr std::uint64_t kDefaultAutBudget = 20'000'000;

/// Packed endomorphism key; see EndoSpace.
using EndoKey = std::uint64_t;

/// Row-major r x r matrix of residues; row i is reduced modulo p_i^{e_i}.
/// Entry (i, j) is the g_i-coordinate of the image of generator g_j.
struct Matrix {
  std::array<std::uint32_t, kMaxRank * kMaxRank> a{};

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a[i * kMaxRank + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a[i * kMaxRank + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Precomputed layout of End(G) for a fixed group: row moduli, prime blocks,
/// and the bit packing of matrices into EndoKey.
///
/// Only entries whose row and column lie in the same prime block are stored
/// (homomorphisms between coprime cyclic groups vanish). Entry (i, j) is a
/// multiple of p^{max(0, e_i - e_j)}; the quotient lies in [0, p^{min(e_i, e_j)})
/// and occupies ceil(log2) bits. Entries are packed row-major with the first
/// entry in the most significant bits, so key order is lexicographic order on
/// matrices.
class EndoSpace {
 public:
  struct Entry {
    std::uint8_t row = 0;
    std::uint8_t col = 0;
    std::uint8_t shift = 0;
    std::uint8_t width = 0;
    std::uint32_t divisor = 1;  // p^{max(0, e_i - e_j)}
    std::uint32_t radix = 1;    // p^{min(e_i, e_j)}
  };
  struct Block {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::uint32_t prime = 2;
  };

  explicit EndoSpace(AbelianGroup group);

  const AbelianGroup& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::uint32_t modulus(std::size_t i) const { return moduli_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t i) const { return block_of_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }
  unsigned key_bits() const { return key_bits_; }
  /// |End(G)| = product of entry radices.
  Count endomorphism_count() const;

  EndoKey pack(const Matrix& m) const;
  Matrix unpack(EndoKey key) const;
  /// True iff every packed digit is below its radix.
  bool is_valid_key(EndoKey key) const;

  Matrix identity() const;
  Matrix scalar(std::uint64_t k) const;

  /// out = a * b (apply b first).
  void compose(const Matrix& a, const Matrix& b, Matrix& out) const;
  Matrix compose(const Matrix& a, const Matrix& b) const {
    Matrix out;
    compose(a, b, out);
    return out;
  }
  /// 1 - a - b.
  Matrix one_minus(const Matrix& a, const Matrix& b) const;
  /// y = m x on coordinate arrays of length rank().
  void apply(const Matrix& m, const std::uint64_t* x, std::uint64_t* y) const;

  /// Mod-p criterion: m is invertible iff each prime block reduced mod p is
  /// invertible over F_p.
  bool is_invertible(const Matrix& m) const;
  /// Inverse of an automorphism whose group order divides `aut_order`.
  Matrix inverse(const Matrix& m, const Count& aut_order) const;

  /// True iff m satisfies the homomorphism divisibility constraints and has
  /// reduced entries.
  bool is_valid(const Matrix& m) const;

 private:
  AbelianGroup group_;
  std::size_t rank_ = 0;
  std::array<std::uint32_t, kMaxRank> moduli_{};
  std::array<std::uint32_t, kMaxRank> masks_{};  // modulus - 1 when a power of two, else 0
  std::array<std::size_t, kMaxRank> block_of_{};
  std::vector<Block> blocks_;
  std::vector<Entry> entries_;
  unsigned key_bits_ = 0;
};

/// An endomorphism of a finite abelian group (column j = image of g_j).
class Endomorphism {
 public:
  /// From a full r x r integer matrix (row = target factor, column = source
  /// factor). Entries are reduced; throws GroupError on a violated
  /// homomorphism constraint or a nonzero cross-prime entry.
  Endomorphism(const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& matrix);
  Endomorphism(std::shared_ptr<const EndoSpace> space, const Matrix& m);

  static Endomorphism identity(const AbelianGroup& g);
  static Endomorphism zero(const AbelianGroup& g);
  /// x -> k x.
  static Endomorphism scalar(const AbelianGroup& g, std::int64_t k);
  /// One square matrix per prime of the group, ascending prime order.
  static Endomorphism from_blocks(const AbelianGroup& g,
                                  const std::vector<std::vector<std::vector<std::int64_t>>>& blocks);
  static Endomorphism from_key(std::shared_ptr<const EndoSpace> space, EndoKey key);

  const AbelianGroup& group() const { return space_->group(); }
  const std::shared_ptr<const EndoSpace>& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  std::uint64_t entry(std::size_t i, std::size_t j) const { return m_(i, j); }
  EndoKey key() const { return space_->pack(m_); }

  /// Per-prime blocks as nested integer lists.
  std::vector<std::vector<std::vector<std::uint64_t>>> blocks() const;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
    return a.group() == b.group() && a.m_ == b.m_;
  }

 private:
  std::shared_ptr<const EndoSpace> space_;
  Matrix m_;
};

std::shared_ptr<const EndoSpace> endo_space(const AbelianGroup& g);

GroupElement apply(const Endomorphism& f, const GroupElement& x);
/// f after g.
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);
/// The endomorphism x -> x - f(x) - g(x).
Endomorphism one_minus(const Endomorphism& f, const Endomorphism& g);
Subgroup image(const Endomorphism& f);
/// Bijectivity decided by the order of the image.
bool is_automorphism(const Endomorphism& f);
Endomorphism inverse(const Endomorphism& f);

nlohmann::json to_json(const Endomorphism& f);

/// Closed-form |Aut(G)| (product over primary components).
Count aut_order(const AbelianGroup& g);

/// The full automorphism group, members sorted by key.
class AutGroup {
 public:
  AutGroup(std::shared_ptr<const EndoSpace> space, std::vector<EndoKey> members);

  const AbelianGroup& group() const { return space_->group(); }
  const std::shared_ptr<const EndoSpace>& space() const { return space_; }
  std::size_t size() const { return members_.size(); }
  std::span<const EndoKey> keys() const { return members_; }
  EndoKey key(std::size_t i) const { return members_[i]; }
  Endomorphism member(std::size_t i) const { return Endomorphism::from_key(space_, members_[i]); }
  Matrix matrix(std::size_t i) const { return space_->unpack(members_[i]); }
  std::optional<std::size_t> index_of(EndoKey key) const;
  std::optional<std::size_t> index_of(const Endomorphism& f) const;
  std::size_t identity_index() const { return identity_index_; }
  std::size_t compose_index(std::size_t a, std::size_t b) const;
  std::size_t inverse_index(std::size_t a) const;

 private:
  std::shared_ptr<const EndoSpace> space_;
  std::vector<EndoKey> members_;
  std::size_t identity_index_ = 0;
};

/// Builds Aut(G); throws ResourceLimitError if |Aut(G)| exceeds `budget`.
AutGroup aut_group(const AbelianGroup& g, std::uint64_t budget = kDefaultAutBudget);

}  // namespace quasienum

#endif  // QUASIENUM_ENDO_HPP
