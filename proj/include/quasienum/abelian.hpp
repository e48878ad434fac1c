#ifndef QUASIENUM_ABELIAN_HPP
#define QUASIENUM_ABELIAN_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quasienum {

/// Raised for malformed groups, descriptors, or elements that do not belong
/// to the group they are used with.
class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

/// Prime factorization of n as (prime, multiplicity), ascending by prime.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exponent);

/// A cyclic factor C_{p^e}.
struct CyclicFactor {
  std::uint64_t prime = 2;
  unsigned exponent = 1;

  std::uint64_t order() const { return ipow(prime, exponent); }

  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
};

/// An element of a finite abelian group: one residue per cyclic factor.
struct GroupElement {
  std::vector<std::uint64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// A finite abelian group in primary decomposition.
///
/// Factors are kept in canonical order (ascending prime, then descending
/// exponent), so two groups are isomorphic iff their factor lists are equal.
/// The trivial group has no factors. Copies share the immutable factor data.
class AbelianGroup {
 public:
  AbelianGroup();
  explicit AbelianGroup(std::vector<CyclicFactor> factors);

  const std::vector<CyclicFactor>& factors() const { return data_->factors; }
  std::size_t rank() const { return data_->factors.size(); }
  std::uint64_t order() const { return data_->order; }
  /// p^e of the i-th factor.
  std::uint64_t modulus(std::size_t i) const { return data_->moduli[i]; }
  const std::vector<std::uint64_t>& moduli() const { return data_->moduli; }

  /// Distinct primes dividing the order, ascending.
  std::vector<std::uint64_t> primes() const;
  /// The p-primary component (empty group if p does not divide the order).
  AbelianGroup primary_component(std::uint64_t p) const;
  bool is_trivial() const { return rank() == 0; }
  /// Cyclic iff at most one factor per prime.
  bool is_cyclic() const;
  bool is_prime_power() const { return primes().size() <= 1; }

  /// Canonical descriptor, e.g. "C4xC2xC3"; the trivial group is "C1".
  std::string descriptor() const;

  GroupElement zero() const;
  GroupElement element(std::vector<std::uint64_t> coords) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  bool contains(const GroupElement& a) const;

  /// Mixed-radix index with the last coordinate varying fastest.
  std::uint64_t index_of(const GroupElement& a) const;
  GroupElement element_at(std::uint64_t index) const;
  std::vector<GroupElement> elements() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.data_ == b.data_ || a.factors() == b.factors();
  }

 private:
  struct Data {
    std::vector<CyclicFactor> factors;
    std::vector<std::uint64_t> moduli;
    std::uint64_t order = 1;
  };
  void check_member(const GroupElement& a) const;
  std::shared_ptr<const Data> data_;
};

/// Builds a group from (prime, exponent) pairs, in any order.
AbelianGroup make_group(const std::vector<std::pair<std::uint64_t, unsigned>>& factors);

/// Parses "C4xC2xC3"-style descriptors. Factors may be given as any cyclic
/// order (e.g. "C6" becomes C2xC3); case and whitespace are ignored.
AbelianGroup parse_group(std::string_view descriptor);

AbelianGroup direct_product(const AbelianGroup& h, const AbelianGroup& k);

/// One group per isomorphism class, in a fixed order: for each prime in
/// ascending order, partitions of its multiplicity from (k) down to (1,...,1).
std::vector<AbelianGroup> abelian_groups_of_order(std::uint64_t n);

/// Integer partitions of k, largest parts first, in reverse-lexicographic order.
std::vector<std::vector<unsigned>> partitions(unsigned k);

/// A subgroup stored as a membership mask over element indices.
class Subgroup {
 public:
  /// Validates closure; throws GroupError if the set is not a subgroup.
  Subgroup(AbelianGroup group, std::vector<std::uint64_t> element_indices);

  static Subgroup generated_by(const AbelianGroup& group,
                               const std::vector<GroupElement>& generators);
  static Subgroup whole(const AbelianGroup& group);
  static Subgroup trivial(const AbelianGroup& group);

  const AbelianGroup& group() const { return group_; }
  std::size_t size() const { return size_; }
  bool contains(const GroupElement& a) const { return mask_[group_.index_of(a)] != 0; }
  bool contains_index(std::uint64_t index) const { return mask_[index] != 0; }
  /// Member indices in ascending order.
  std::vector<std::uint64_t> element_indices() const;

 private:
  Subgroup(AbelianGroup group, std::vector<std::uint8_t> mask, std::size_t size);
  AbelianGroup group_;
  std::vector<std::uint8_t> mask_;
  std::size_t size_ = 0;
};

/// Coset decomposition G/U. Representatives are the mixed-radix-minimal
/// element of each coset, listed in ascending index order.
struct CosetDecomposition {
  std::vector<GroupElement> representatives;
  /// Element index -> position of its coset in `representatives`.
  std::vector<std::size_t> class_of;

  const GroupElement& representative_of(const AbelianGroup& g, const GroupElement& a) const {
    return representatives[class_of[g.index_of(a)]];
  }
};

CosetDecomposition cosets(const AbelianGroup& g, const Subgroup& u);

}  // namespace quasienum

#endif  // QUASIENUM_ABELIAN_HPP
