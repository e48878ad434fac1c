#include "quasienum/action.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace quasienum {

// ---------------------------------------------------------------------------
// KeySet

KeySet::KeySet(const EndoSpace& space) : dense_(space.key_bits() <= kDenseKeyBits) {
  if (dense_) bits_.assign(std::max<std::size_t>(1, (std::size_t{1} << space.key_bits()) / 64), 0);
}

bool KeySet::insert(EndoKey key) {
  if (dense_) {
    auto& word = bits_[key >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (key & 63);
    if (word & bit) return false;
    word |= bit;
    if (touched_.size() < kTrackLimit) touched_.push_back(key);
  } else if (!hashed_.insert(key).second) {
    return false;
  }
  ++size_;
  return true;
}

bool KeySet::contains(EndoKey key) const {
  if (dense_) return (bits_[key >> 6] >> (key & 63)) & 1;
  return hashed_.count(key) != 0;
}

void KeySet::clear() {
  if (dense_) {
    if (size_ <= touched_.size()) {
      for (auto k : touched_) bits_[k >> 6] = 0;
    } else {
      std::fill(bits_.begin(), bits_.end(), 0);
    }
    touched_.clear();
  } else {
    hashed_.clear();
  }
  size_ = 0;
}

std::uint64_t closure_size(const EndoSpace& space, std::span<const Matrix> gens, KeySet& scratch,
                           std::uint64_t stop_after) {
  scratch.clear();
  std::vector<EndoKey> queue{space.pack(space.identity())};
  scratch.insert(queue.front());
  Matrix y;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Matrix x = space.unpack(queue[head]);
    for (const auto& s : gens) {
      space.compose(x, s, y);
      const EndoKey k = space.pack(y);
      if (scratch.insert(k)) {
        queue.push_back(k);
        if (queue.size() > stop_after) return queue.size();
      }
    }
  }
  return queue.size();
}

bool greedy_generators(const EndoSpace& space, std::span<const EndoKey> candidates,
                       std::uint64_t order, KeySet& scratch, std::vector<Matrix>& gens) {
  std::uint64_t current = closure_size(space, gens, scratch, order);
  if (current == order) return true;
  for (EndoKey k : candidates) {
    if (scratch.contains(k)) continue;
    gens.push_back(space.unpack(k));
    current = closure_size(space, gens, scratch, order);
    if (current == order) return true;
    if (current > order)
      throw std::logic_error("candidate generators escape a subgroup of order " +
                             std::to_string(order));
  }
  return false;
}

// ---------------------------------------------------------------------------
// Index-level actions on Aut(G)

namespace {

void check_members(const AutGroup& a, std::span<const std::size_t> xs, const char* what) {
  for (auto x : xs)
    if (x >= a.size()) throw std::invalid_argument(std::string(what) + " contains a non-member");
}

std::vector<Matrix> matrices_of(const AutGroup& a, std::span<const std::size_t> xs) {
  std::vector<Matrix> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(a.matrix(x));
  return out;
}

std::vector<Matrix> inverses_of(const AutGroup& a, const std::vector<Matrix>& ms) {
  std::vector<Matrix> out;
  out.reserve(ms.size());
  const Count order(a.size());
  for (const auto& m : ms) out.push_back(a.space()->inverse(m, order));
  return out;
}

/// Orbits of H (given by `acting` matrices with inverses) on the points of
/// `domain` under conjugation. Full-sweep when `acting` is the whole of H,
/// breadth-first closure when it is a generating set; both are exact.
OrbitPartition conjugation_orbits(const AutGroup& a, const std::vector<Matrix>& acting,
                                  const std::vector<Matrix>& acting_inv,
                                  std::span<const std::size_t> domain, bool breadth_first) {
  const auto& space = *a.space();
  std::vector<std::uint8_t> in_domain(a.size(), 0);
  for (auto s : domain) in_domain[s] = 1;
  OrbitPartition out;
  out.orbit_of.assign(a.size(), OrbitPartition::kNoOrbit);
  std::vector<std::size_t> sorted(domain.begin(), domain.end());
  std::sort(sorted.begin(), sorted.end());
  Matrix t, y;
  std::vector<std::size_t> queue;
  for (auto s : sorted) {
    if (out.orbit_of[s] != OrbitPartition::kNoOrbit) continue;
    out.representatives.push_back(s);
    out.orbit_of[s] = s;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Matrix x = breadth_first ? a.matrix(queue[head]) : a.matrix(s);
      for (std::size_t i = 0; i < acting.size(); ++i) {
        space.compose(acting[i], x, t);
        space.compose(t, acting_inv[i], y);
        const auto idx = a.index_of(space.pack(y));
        if (!idx || !in_domain[*idx])
          throw std::invalid_argument("conjugation orbit leaves the acted-upon set");
        if (out.orbit_of[*idx] == OrbitPartition::kNoOrbit) {
          out.orbit_of[*idx] = s;
          queue.push_back(*idx);
        }
      }
      if (!breadth_first) break;
    }
    out.orbit_sizes.push_back(queue.size());
  }
  return out;
}

}  // namespace

std::vector<std::size_t> generating_set(const AutGroup& a, std::span<const std::size_t> h) {
  check_members(a, h, "subgroup");
  std::vector<EndoKey> candidates;
  candidates.reserve(h.size());
  for (auto x : h) candidates.push_back(a.key(x));
  std::mt19937_64 rng(0x5eed'0000 + h.size());
  std::shuffle(candidates.begin(), candidates.end(), rng);
  KeySet scratch(*a.space());
  std::vector<Matrix> gens;
  if (!greedy_generators(*a.space(), candidates, h.size(), scratch, gens))
    throw std::invalid_argument("element list is not a subgroup");
  for (EndoKey k : candidates)
    if (!scratch.contains(k)) throw std::invalid_argument("element list is not a subgroup");
  std::vector<std::size_t> out;
  for (const auto& m : gens) out.push_back(*a.index_of(a.space()->pack(m)));
  return out;
}

OrbitPartition conjugacy_class_reps(const AutGroup& a) {
  std::vector<std::size_t> all(a.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return orbit_reps_conjugation(a, all, all);
}

std::vector<std::size_t> centralizer(const AutGroup& a, std::size_t f) {
  if (f >= a.size()) throw std::invalid_argument("element is not a member of the automorphism group");
  const auto& space = *a.space();
  const Matrix mf = a.matrix(f);
  std::vector<std::size_t> out;
  Matrix fh, hf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Matrix h = a.matrix(i);
    space.compose(mf, h, fh);
    space.compose(h, mf, hf);
    if (fh == hf) out.push_back(i);
  }
  return out;
}

OrbitPartition orbit_reps_conjugation(const AutGroup& a, std::span<const std::size_t> h,
                                      std::span<const std::size_t> s) {
  check_members(a, h, "acting group");
  check_members(a, s, "acted-upon set");
  if (h.size() <= kFullSweepLimit) {
    const auto ms = matrices_of(a, h);
    return conjugation_orbits(a, ms, inverses_of(a, ms), s, false);
  }
  const auto gens = generating_set(a, h);
  const auto ms = matrices_of(a, gens);
  return conjugation_orbits(a, ms, inverses_of(a, ms), s, true);
}

OrbitPartition orbit_reps_on_cosets(const AutGroup& a, std::span<const std::size_t> h,
                                    const Subgroup& u) {
  check_members(a, h, "acting group");
  const auto& g = a.group();
  if (!(u.group() == g)) throw std::invalid_argument("subgroup of a different group");
  const auto dec = cosets(g, u);
  const auto u_members = u.element_indices();
  const std::size_t n = dec.representatives.size();

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  const auto elements = g.elements();
  for (auto hi : h) {
    const auto hm = a.member(hi);
    for (auto ui : u_members)
      if (!u.contains(apply(hm, elements[ui])))
        throw std::logic_error("automorphism does not preserve the subgroup");
    std::vector<std::size_t> image_coset(n, OrbitPartition::kNoOrbit);
    for (std::uint64_t x = 0; x < g.order(); ++x) {
      const std::size_t from = dec.class_of[x];
      const std::size_t to = dec.class_of[g.index_of(apply(hm, elements[x]))];
      if (image_coset[from] == OrbitPartition::kNoOrbit) image_coset[from] = to;
      if (image_coset[from] != to)
        throw std::logic_error("induced action on cosets is not well defined");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto ra = find(c), rb = find(image_coset[c]);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  // Coset reps are listed ascending, so the root (minimal id) of each class
  // is also its minimal element index.
  OrbitPartition out;
  out.orbit_of.assign(g.order(), OrbitPartition::kNoOrbit);
  std::vector<std::size_t> slot(n, OrbitPartition::kNoOrbit);
  for (std::size_t c = 0; c < n; ++c) {
    const auto root = find(c);
    const auto rep_index = g.index_of(dec.representatives[root]);
    if (slot[root] == OrbitPartition::kNoOrbit) {
      slot[root] = out.representatives.size();
      out.representatives.push_back(rep_index);
      out.orbit_sizes.push_back(0);
    }
    ++out.orbit_sizes[slot[root]];
    out.orbit_of[g.index_of(dec.representatives[c])] = rep_index;
  }
  return out;
}

}  // namespace quasienum
