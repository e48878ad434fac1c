#ifndef QUASIENUM_ACTION_HPP
#define QUASIENUM_ACTION_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_set>
#include <vector>

#include "quasienum/abelian.hpp"
#include "quasienum/endo.hpp"

namespace quasienum {

/// Orbits of a group action on points 0..domain-1. Points outside the acted
/// set map to kNoOrbit. Each representative is the minimal point of its orbit.
struct OrbitPartition {
  static constexpr std::size_t kNoOrbit = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> representatives;  // ascending
  std::vector<std::size_t> orbit_sizes;      // parallel to representatives
  std::vector<std::size_t> orbit_of;         // point -> representative

  std::size_t count() const { return representatives.size(); }
};

/// Subgroups up to this size are handled by full sweeps instead of
/// generator closures.
inline constexpr std::size_t kFullSweepLimit = 1024;

/// Conjugacy classes of A; points are member indices.
OrbitPartition conjugacy_class_reps(const AutGroup& a);

/// Member indices of C_A(f), ascending.
std::vector<std::size_t> centralizer(const AutGroup& a, std::size_t f);

/// Orbits of the conjugation action s -> h s h^-1 of H on S (both given as
/// member indices). Throws std::invalid_argument if an orbit leaves S.
OrbitPartition orbit_reps_conjugation(const AutGroup& a, std::span<const std::size_t> h,
                                      std::span<const std::size_t> s);

/// Orbits of H on G/U via u + U -> h(u) + U. Points are element indices of G;
/// only coset representatives (minimal elements) are assigned orbits.
/// Throws std::logic_error if some h does not preserve U or the induced map
/// is not well defined.
OrbitPartition orbit_reps_on_cosets(const AutGroup& a, std::span<const std::size_t> h,
                                    const Subgroup& u);

/// A generating set of the subgroup H, chosen greedily: elements are added in
/// a fixed pseudo-random order until their closure is all of H.
std::vector<std::size_t> generating_set(const AutGroup& a, std::span<const std::size_t> h);

// ---------------------------------------------------------------------------
// Key-level building blocks shared with the enumeration engine.

/// Set of endomorphism keys: a bitset over the whole key space when it is
/// small enough, a hash set otherwise.
class KeySet {
 public:
  static constexpr unsigned kDenseKeyBits = 28;

  explicit KeySet(const EndoSpace& space);

  /// Returns true if the key was not present.
  bool insert(EndoKey key);
  bool contains(EndoKey key) const;
  void clear();
  std::size_t size() const { return size_; }

 private:
  static constexpr std::size_t kTrackLimit = 1 << 14;

  bool dense_ = false;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<EndoKey> hashed_;
  std::vector<EndoKey> touched_;
  std::size_t size_ = 0;
};

/// Size of the group generated by `gens`, stopping early once it exceeds
/// `stop_after`. `scratch` holds the closure on return.
std::uint64_t closure_size(const EndoSpace& space, std::span<const Matrix> gens, KeySet& scratch,
                           std::uint64_t stop_after = std::numeric_limits<std::uint64_t>::max());

/// Greedily appends generators taken from `candidates` (members of a subgroup
/// of the given order) to `gens`. Returns false if the candidates do not
/// generate a group of that order.
bool greedy_generators(const EndoSpace& space, std::span<const EndoKey> candidates,
                       std::uint64_t order, KeySet& scratch, std::vector<Matrix>& gens);

}  // namespace quasienum

#endif  // QUASIENUM_ACTION_HPP
