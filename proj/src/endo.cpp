#include "quasienum/endo.hpp"

#include <algorithm>
#include <bit>

namespace quasienum {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 28;

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(q);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce_signed(t, p);
}

}  // namespace

// ---------------------------------------------------------------------------
// EndoSpace

EndoSpace::EndoSpace(AbelianGroup group) : group_(std::move(group)), rank_(group_.rank()) {
  if (rank_ > kMaxRank)
    throw ResourceLimitError("group " + group_.descriptor() + " has " + std::to_string(rank_) +
                                 " cyclic factors; at most " + std::to_string(kMaxRank) +
                                 " are supported",
                             Count(rank_));
  const auto& fs = group_.factors();
  for (std::size_t i = 0; i < rank_; ++i) {
    if (group_.modulus(i) > kMaxModulus)
      throw ResourceLimitError("cyclic factor C" + std::to_string(group_.modulus(i)) +
                                   " is too large for endomorphism arithmetic",
                               Count(group_.modulus(i)));
    moduli_[i] = static_cast<std::uint32_t>(group_.modulus(i));
    masks_[i] = std::has_single_bit(moduli_[i]) ? moduli_[i] - 1 : 0;
    if (blocks_.empty() || blocks_.back().prime != fs[i].prime)
      blocks_.push_back({i, i, static_cast<std::uint32_t>(fs[i].prime)});
    blocks_.back().end = i + 1;
    block_of_[i] = blocks_.size() - 1;
  }
  for (const auto& b : blocks_) {
    for (std::size_t i = b.begin; i < b.end; ++i) {
      for (std::size_t j = b.begin; j < b.end; ++j) {
        const unsigned ei = fs[i].exponent, ej = fs[j].exponent;
        Entry e;
        e.row = static_cast<std::uint8_t>(i);
        e.col = static_cast<std::uint8_t>(j);
        e.divisor = static_cast<std::uint32_t>(ipow(b.prime, ei > ej ? ei - ej : 0));
        e.radix = static_cast<std::uint32_t>(ipow(b.prime, std::min(ei, ej)));
        e.width = static_cast<std::uint8_t>(std::bit_width(e.radix - 1));
        entries_.push_back(e);
        key_bits_ += e.width;
      }
    }
  }
  if (key_bits_ > 64)
    throw ResourceLimitError("endomorphism ring of " + group_.descriptor() +
                                 " is too large to index",
                             endomorphism_count());
  unsigned shift = key_bits_;
  for (auto& e : entries_) {
    shift -= e.width;
    e.shift = static_cast<std::uint8_t>(shift);
  }
}

Count EndoSpace::endomorphism_count() const {
  Count c = 1;
  for (const auto& e : entries_) c *= e.radix;
  return c;
}

EndoKey EndoSpace::pack(const Matrix& m) const {
  EndoKey key = 0;
  for (const auto& e : entries_) key |= EndoKey{m(e.row, e.col) / e.divisor} << e.shift;
  return key;
}

Matrix EndoSpace::unpack(EndoKey key) const {
  Matrix m;
  for (const auto& e : entries_) {
    const auto digit = static_cast<std::uint32_t>((key >> e.shift) & ((EndoKey{1} << e.width) - 1));
    m(e.row, e.col) = digit * e.divisor;
  }
  return m;
}

bool EndoSpace::is_valid_key(EndoKey key) const {
  if (key_bits_ < 64 && (key >> key_bits_) != 0) return false;
  for (const auto& e : entries_)
    if (((key >> e.shift) & ((EndoKey{1} << e.width) - 1)) >= e.radix) return false;
  return true;
}

bool EndoSpace::is_valid(const Matrix& m) const {
  for (std::size_t i = 0; i < kMaxRank; ++i)
    for (std::size_t j = 0; j < kMaxRank; ++j) {
      const bool inside = i < rank_ && j < rank_ && block_of_[i] == block_of_[j];
      if (!inside && m(i, j) != 0) return false;
    }
  for (const auto& e : entries_) {
    const auto v = m(e.row, e.col);
    if (v >= moduli_[e.row] || v % e.divisor != 0) return false;
  }
  return true;
}

Matrix EndoSpace::identity() const { return scalar(1); }

Matrix EndoSpace::scalar(std::uint64_t k) const {
  Matrix m;
  for (std::size_t i = 0; i < rank_; ++i) m(i, i) = static_cast<std::uint32_t>(k % moduli_[i]);
  return m;
}

void EndoSpace::compose(const Matrix& a, const Matrix& b, Matrix& out) const {
  for (const auto& blk : blocks_) {
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      const std::uint32_t q = moduli_[i], mask = masks_[i];
      for (std::size_t j = blk.begin; j < blk.end; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = blk.begin; k < blk.end; ++k)
          s += std::uint64_t{a(i, k)} * b(k, j);
        out(i, j) = static_cast<std::uint32_t>(mask ? (s & mask) : (s % q));
      }
    }
  }
}

Matrix EndoSpace::one_minus(const Matrix& a, const Matrix& b) const {
  Matrix out;
  for (const auto& e : entries_) {
    const std::uint64_t q = moduli_[e.row];
    const std::uint64_t one = e.row == e.col ? 1 : 0;
    out(e.row, e.col) =
        static_cast<std::uint32_t>((one + 2 * q - a(e.row, e.col) - b(e.row, e.col)) % q);
  }
  return out;
}

void EndoSpace::apply(const Matrix& m, const std::uint64_t* x, std::uint64_t* y) const {
  for (const auto& blk : blocks_) {
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      std::uint64_t s = 0;
      for (std::size_t k = blk.begin; k < blk.end; ++k) s += std::uint64_t{m(i, k)} * x[k];
      y[i] = masks_[i] ? (s & masks_[i]) : (s % moduli_[i]);
    }
  }
}

bool EndoSpace::is_invertible(const Matrix& m) const {
  for (const auto& blk : blocks_) {
    const std::size_t n = blk.end - blk.begin;
    const std::uint64_t p = blk.prime;
    std::array<std::uint64_t, kMaxRank * kMaxRank> w{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i * kMaxRank + j] = m(blk.begin + i, blk.begin + j) % p;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && w[piv * kMaxRank + col] == 0) ++piv;
      if (piv == n) return false;
      if (piv != col)
        for (std::size_t j = col; j < n; ++j) std::swap(w[piv * kMaxRank + j], w[col * kMaxRank + j]);
      const std::uint64_t inv = p == 2 ? 1 : inverse_mod_prime(w[col * kMaxRank + col], p);
      for (std::size_t r = col + 1; r < n; ++r) {
        const std::uint64_t factor = (w[r * kMaxRank + col] * inv) % p;
        if (factor == 0) continue;
        for (std::size_t j = col; j < n; ++j)
          w[r * kMaxRank + j] = (w[r * kMaxRank + j] + (p - factor) * w[col * kMaxRank + j]) % p;
      }
    }
  }
  return true;
}

Matrix EndoSpace::inverse(const Matrix& m, const Count& aut_order) const {
  // m^(|Aut| - 1) by square-and-multiply.
  const Count e = aut_order - 1;
  Matrix result = identity();
  if (e == 0) return result;
  const auto top = boost::multiprecision::msb(e);
  for (auto bit = static_cast<long>(top); bit >= 0; --bit) {
    result = compose(result, result);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) result = compose(result, m);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Endomorphism

std::shared_ptr<const EndoSpace> endo_space(const AbelianGroup& g) {
  return std::make_shared<const EndoSpace>(g);
}

Endomorphism::Endomorphism(std::shared_ptr<const EndoSpace> space, const Matrix& m)
    : space_(std::move(space)), m_(m) {
  if (!space_->is_valid(m_))
    throw GroupError("matrix is not a reduced endomorphism of " + space_->group().descriptor());
}

Endomorphism::Endomorphism(const AbelianGroup& g, const std::vector<std::vector<std::int64_t>>& matrix)
    : space_(endo_space(g)) {
  const std::size_t r = g.rank();
  if (matrix.size() != r)
    throw GroupError("endomorphism of " + g.descriptor() + " needs " + std::to_string(r) + " rows");
  for (std::size_t i = 0; i < r; ++i) {
    if (matrix[i].size() != r)
      throw GroupError("endomorphism of " + g.descriptor() + " needs " + std::to_string(r) +
                       " columns");
    for (std::size_t j = 0; j < r; ++j) {
      const std::uint64_t v = reduce_signed(matrix[i][j], g.modulus(i));
      if (space_->block_of(i) != space_->block_of(j)) {
        if (v != 0) throw GroupError("nonzero entry between coprime factors");
        continue;
      }
      const auto& fi = g.factors()[i];
      const auto& fj = g.factors()[j];
      const std::uint64_t d = ipow(fi.prime, fi.exponent > fj.exponent ? fi.exponent - fj.exponent : 0);
      if (v % d != 0)
        throw GroupError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                         std::to_string(v) + " is not a multiple of " + std::to_string(d) +
                         "; not a homomorphism");
      m_(i, j) = static_cast<std::uint32_t>(v);
    }
  }
}

Endomorphism Endomorphism::identity(const AbelianGroup& g) {
  auto s = endo_space(g);
  const Matrix m = s->identity();
  return Endomorphism(std::move(s), m);
}

Endomorphism Endomorphism::zero(const AbelianGroup& g) { return Endomorphism(endo_space(g), Matrix{}); }

Endomorphism Endomorphism::scalar(const AbelianGroup& g, std::int64_t k) {
  auto s = endo_space(g);
  Matrix m;
  for (std::size_t i = 0; i < g.rank(); ++i)
    m(i, i) = static_cast<std::uint32_t>(reduce_signed(k, g.modulus(i)));
  return Endomorphism(std::move(s), m);
}

Endomorphism Endomorphism::from_blocks(
    const AbelianGroup& g, const std::vector<std::vector<std::vector<std::int64_t>>>& blocks) {
  auto s = endo_space(g);
  if (blocks.size() != s->blocks().size())
    throw GroupError("expected one block per prime of " + g.descriptor());
  std::vector<std::vector<std::int64_t>> full(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = s->blocks()[b];
    const std::size_t n = blk.end - blk.begin;
    if (blocks[b].size() != n) throw GroupError("block size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (blocks[b][i].size() != n) throw GroupError("block size mismatch");
      for (std::size_t j = 0; j < n; ++j) full[blk.begin + i][blk.begin + j] = blocks[b][i][j];
    }
  }
  return Endomorphism(g, full);
}

Endomorphism Endomorphism::from_key(std::shared_ptr<const EndoSpace> space, EndoKey key) {
  const Matrix m = space->unpack(key);
  return Endomorphism(std::move(space), m);
}

std::vector<std::vector<std::vector<std::uint64_t>>> Endomorphism::blocks() const {
  std::vector<std::vector<std::vector<std::uint64_t>>> out;
  for (const auto& blk : space_->blocks()) {
    std::vector<std::vector<std::uint64_t>> b;
    for (std::size_t i = blk.begin; i < blk.end; ++i) {
      std::vector<std::uint64_t> row;
      for (std::size_t j = blk.begin; j < blk.end; ++j) row.push_back(m_(i, j));
      b.push_back(std::move(row));
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

void require_same_group(const Endomorphism& f, const Endomorphism& g) {
  if (!(f.group() == g.group()))
    throw GroupError("endomorphisms of different groups: " + f.group().descriptor() + " vs " +
                     g.group().descriptor());
}

}  // namespace

GroupElement apply(const Endomorphism& f, const GroupElement& x) {
  const auto& g = f.group();
  if (!g.contains(x)) throw GroupError("element does not belong to " + g.descriptor());
  GroupElement y = g.zero();
  f.space()->apply(f.matrix(), x.coords.data(), y.coords.data());
  return y;
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  require_same_group(f, g);
  return Endomorphism(f.space(), f.space()->compose(f.matrix(), g.matrix()));
}

Endomorphism one_minus(const Endomorphism& f, const Endomorphism& g) {
  require_same_group(f, g);
  return Endomorphism(f.space(), f.space()->one_minus(f.matrix(), g.matrix()));
}

Subgroup image(const Endomorphism& f) {
  const auto& g = f.group();
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    GroupElement col = g.zero();
    for (std::size_t i = 0; i < g.rank(); ++i) col.coords[i] = f.entry(i, j);
    gens.push_back(std::move(col));
  }
  return Subgroup::generated_by(g, gens);
}

bool is_automorphism(const Endomorphism& f) { return image(f).size() == f.group().order(); }

Endomorphism inverse(const Endomorphism& f) {
  if (!is_automorphism(f)) throw GroupError("endomorphism is not invertible");
  return Endomorphism(f.space(), f.space()->inverse(f.matrix(), aut_order(f.group())));
}

nlohmann::json to_json(const Endomorphism& f) { return nlohmann::json(f.blocks()); }

// ---------------------------------------------------------------------------
// Aut(G)

Count aut_order(const AbelianGroup& g) {
  Count total = 1;
  for (auto p : g.primes()) {
    std::vector<unsigned> e;
    for (const auto& f : g.factors())
      if (f.prime == p) e.push_back(f.exponent);
    std::sort(e.begin(), e.end());
    const std::size_t n = e.size();
    // 1-based d_k = last index with e_l == e_k, c_k = first such index.
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t d = k, c = k;
      while (d < n && e[d] == e[k - 1]) ++d;
      while (c > 1 && e[c - 2] == e[k - 1]) --c;
      const Count pp = p;
      total *= boost::multiprecision::pow(pp, static_cast<unsigned>(d)) -
               boost::multiprecision::pow(pp, static_cast<unsigned>(k - 1));
      total *= boost::multiprecision::pow(pp, static_cast<unsigned>(e[k - 1] * (n - d)));
      total *= boost::multiprecision::pow(pp, static_cast<unsigned>((e[k - 1] - 1) * (n - c + 1)));
    }
  }
  return total;
}

AutGroup::AutGroup(std::shared_ptr<const EndoSpace> space, std::vector<EndoKey> members)
    : space_(std::move(space)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  const auto id = index_of(space_->pack(space_->identity()));
  if (!id) throw GroupError("automorphism list lacks the identity");
  identity_index_ = *id;
}

std::optional<std::size_t> AutGroup::index_of(EndoKey key) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), key);
  if (it == members_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::optional<std::size_t> AutGroup::index_of(const Endomorphism& f) const {
  if (!(f.group() == group())) return std::nullopt;
  return index_of(f.key());
}

std::size_t AutGroup::compose_index(std::size_t a, std::size_t b) const {
  return *index_of(space_->pack(space_->compose(matrix(a), matrix(b))));
}

std::size_t AutGroup::inverse_index(std::size_t a) const {
  return *index_of(space_->pack(space_->inverse(matrix(a), Count(size()))));
}

AutGroup aut_group(const AbelianGroup& g, std::uint64_t budget) {
  const Count expected = aut_order(g);
  if (expected > budget)
    throw ResourceLimitError("|Aut(" + g.descriptor() + ")| = " + expected.str() +
                                 " exceeds the automorphism budget of " + std::to_string(budget),
                             expected);
  auto space = endo_space(g);
  const auto& entries = space->entries();
  std::vector<EndoKey> members;
  members.reserve(static_cast<std::size_t>(expected));

  // Odometer over reduced entries; the last entry varies fastest, so keys
  // come out in ascending order.
  Matrix m;
  std::vector<std::uint32_t> digit(entries.size(), 0);
  while (true) {
    if (space->is_invertible(m)) members.push_back(space->pack(m));
    bool wrapped = true;
    for (std::size_t pos = entries.size(); pos-- > 0;) {
      const auto& e = entries[pos];
      if (++digit[pos] < e.radix) {
        m(e.row, e.col) = digit[pos] * e.divisor;
        wrapped = false;
        break;
      }
      digit[pos] = 0;
      m(e.row, e.col) = 0;
    }
    if (wrapped) break;
  }
  if (Count(members.size()) != expected)
    throw std::logic_error("enumerated " + std::to_string(members.size()) +
                           " automorphisms of " + g.descriptor() + ", expected " + expected.str());
  return AutGroup(std::move(space), std::move(members));
}

}  // namespace quasienum
