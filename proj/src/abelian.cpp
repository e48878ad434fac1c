#include "quasienum/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

namespace quasienum {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k > 0) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw GroupError("integer overflow computing " + std::to_string(base) + "^" +
                       std::to_string(exponent));
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup() : AbelianGroup(std::vector<CyclicFactor>{}) {}

AbelianGroup::AbelianGroup(std::vector<CyclicFactor> factors) {
  for (const auto& f : factors) {
    if (!is_prime(f.prime))
      throw GroupError("factor C_{" + std::to_string(f.prime) + "^" + std::to_string(f.exponent) +
                       "}: " + std::to_string(f.prime) + " is not prime");
    if (f.exponent == 0)
      throw GroupError("factor with prime " + std::to_string(f.prime) + " has exponent 0");
  }
  std::sort(factors.begin(), factors.end(), [](const CyclicFactor& a, const CyclicFactor& b) {
    if (a.prime != b.prime) return a.prime < b.prime;
    return a.exponent > b.exponent;
  });
  auto data = std::make_shared<Data>();
  data->factors = std::move(factors);
  for (const auto& f : data->factors) {
    const std::uint64_t q = f.order();
    data->moduli.push_back(q);
    if (data->order > std::numeric_limits<std::uint64_t>::max() / q)
      throw GroupError("group order overflows 64 bits");
    data->order *= q;
  }
  data_ = std::move(data);
}

std::vector<std::uint64_t> AbelianGroup::primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& f : factors())
    if (out.empty() || out.back() != f.prime) out.push_back(f.prime);
  return out;
}

AbelianGroup AbelianGroup::primary_component(std::uint64_t p) const {
  std::vector<CyclicFactor> fs;
  for (const auto& f : factors())
    if (f.prime == p) fs.push_back(f);
  return AbelianGroup(std::move(fs));
}

bool AbelianGroup::is_cyclic() const { return primes().size() == rank(); }

std::string AbelianGroup::descriptor() const {
  if (is_trivial()) return "C1";
  std::string s;
  for (const auto& f : factors()) {
    if (!s.empty()) s += 'x';
    s += 'C';
    s += std::to_string(f.order());
  }
  return s;
}

void AbelianGroup::check_member(const GroupElement& a) const {
  if (a.coords.size() != rank())
    throw GroupError("element has " + std::to_string(a.coords.size()) + " coordinates, group " +
                     descriptor() + " has " + std::to_string(rank()) + " factors");
  for (std::size_t i = 0; i < rank(); ++i)
    if (a.coords[i] >= modulus(i))
      throw GroupError("coordinate " + std::to_string(a.coords[i]) + " out of range for C" +
                       std::to_string(modulus(i)));
}

GroupElement AbelianGroup::zero() const { return GroupElement{std::vector<std::uint64_t>(rank(), 0)}; }

GroupElement AbelianGroup::element(std::vector<std::uint64_t> coords) const {
  GroupElement e{std::move(coords)};
  check_member(e);
  return e;
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check_member(a);
  check_member(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % modulus(i);
  return r;
}

GroupElement AbelianGroup::neg(const GroupElement& a) const {
  check_member(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < rank(); ++i)
    r.coords[i] = (modulus(i) - a.coords[i] % modulus(i)) % modulus(i);
  return r;
}

GroupElement AbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, neg(b));
}

bool AbelianGroup::contains(const GroupElement& a) const {
  if (a.coords.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (a.coords[i] >= modulus(i)) return false;
  return true;
}

std::uint64_t AbelianGroup::index_of(const GroupElement& a) const {
  if (!contains(a)) throw GroupError("element does not belong to " + descriptor());
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * modulus(i) + a.coords[i];
  return idx;
}

GroupElement AbelianGroup::element_at(std::uint64_t index) const {
  if (index >= order()) throw GroupError("element index out of range");
  GroupElement e = zero();
  for (std::size_t i = rank(); i-- > 0;) {
    e.coords[i] = index % modulus(i);
    index /= modulus(i);
  }
  return e;
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order());
  for (std::uint64_t i = 0; i < order(); ++i) out.push_back(element_at(i));
  return out;
}

// ---------------------------------------------------------------------------

AbelianGroup make_group(const std::vector<std::pair<std::uint64_t, unsigned>>& factors) {
  std::vector<CyclicFactor> fs;
  fs.reserve(factors.size());
  for (auto [p, e] : factors) fs.push_back({p, e});
  return AbelianGroup(std::move(fs));
}

AbelianGroup parse_group(std::string_view descriptor) {
  std::string s;
  for (char c : descriptor)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) throw GroupError("empty group descriptor");

  std::vector<CyclicFactor> fs;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw GroupError("cannot parse group descriptor '" + std::string(descriptor) + "': " + why);
  };
  auto number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos) fail("expected a number");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  };
  while (pos < s.size()) {
    if (s[pos] != 'c') fail("expected 'C'");
    ++pos;
    const std::uint64_t q = number();
    std::uint64_t times = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      times = number();
      if (times == 0) fail("exponent 0 in C" + std::to_string(q) + "^0");
    }
    if (q == 0) fail("C0 is not a finite cyclic group");
    for (std::uint64_t t = 0; t < times; ++t)
      for (auto [p, e] : factorize(q)) fs.push_back({p, e});
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != '*') fail("expected 'x' between factors");
      ++pos;
      if (pos == s.size()) fail("trailing separator");
    }
  }
  return AbelianGroup(std::move(fs));
}

AbelianGroup direct_product(const AbelianGroup& h, const AbelianGroup& k) {
  std::vector<CyclicFactor> fs = h.factors();
  fs.insert(fs.end(), k.factors().begin(), k.factors().end());
  return AbelianGroup(std::move(fs));
}

std::vector<std::vector<unsigned>> partitions(unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

std::vector<AbelianGroup> abelian_groups_of_order(std::uint64_t n) {
  if (n == 0) throw GroupError("group order must be positive");
  std::vector<std::vector<CyclicFactor>> partial{{}};
  for (auto [p, k] : factorize(n)) {
    std::vector<std::vector<CyclicFactor>> next;
    for (const auto& prefix : partial) {
      for (const auto& lambda : partitions(k)) {
        auto fs = prefix;
        for (unsigned part : lambda) fs.push_back({p, part});
        next.push_back(std::move(fs));
      }
    }
    partial = std::move(next);
  }
  std::vector<AbelianGroup> out;
  out.reserve(partial.size());
  for (auto& fs : partial) out.emplace_back(std::move(fs));
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(AbelianGroup group, std::vector<std::uint8_t> mask, std::size_t size)
    : group_(std::move(group)), mask_(std::move(mask)), size_(size) {}

Subgroup::Subgroup(AbelianGroup group, std::vector<std::uint64_t> element_indices)
    : group_(std::move(group)), mask_(group_.order(), 0) {
  for (auto i : element_indices) {
    if (i >= group_.order()) throw GroupError("subgroup element index out of range");
    if (!mask_[i]) ++size_;
    mask_[i] = 1;
  }
  if (!mask_[0]) throw GroupError("subset does not contain zero");
  const auto members = this->element_indices();
  for (auto a : members) {
    const auto ea = group_.element_at(a);
    if (!mask_[group_.index_of(group_.neg(ea))]) throw GroupError("subset not closed under negation");
    for (auto b : members)
      if (!mask_[group_.index_of(group_.add(ea, group_.element_at(b)))])
        throw GroupError("subset not closed under addition");
  }
}

Subgroup Subgroup::generated_by(const AbelianGroup& group, const std::vector<GroupElement>& generators) {
  std::vector<std::uint8_t> mask(group.order(), 0);
  std::vector<std::uint64_t> queue{0};
  mask[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = group.element_at(queue[head]);
    for (const auto& s : generators) {
      const auto y = group.index_of(group.add(x, s));
      if (!mask[y]) {
        mask[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return Subgroup(group, std::move(mask), queue.size());
}

Subgroup Subgroup::whole(const AbelianGroup& group) {
  return Subgroup(group, std::vector<std::uint8_t>(group.order(), 1), group.order());
}

Subgroup Subgroup::trivial(const AbelianGroup& group) {
  std::vector<std::uint8_t> mask(group.order(), 0);
  mask[0] = 1;
  return Subgroup(group, std::move(mask), 1);
}

std::vector<std::uint64_t> Subgroup::element_indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

CosetDecomposition cosets(const AbelianGroup& g, const Subgroup& u) {
  if (!(u.group() == g)) throw GroupError("subgroup belongs to a different group");
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  CosetDecomposition out;
  out.class_of.assign(g.order(), kUnset);
  const auto members = u.element_indices();
  std::vector<GroupElement> member_elems;
  member_elems.reserve(members.size());
  for (auto m : members) member_elems.push_back(g.element_at(m));
  for (std::uint64_t x = 0; x < g.order(); ++x) {
    if (out.class_of[x] != kUnset) continue;
    const auto ex = g.element_at(x);
    const std::size_t id = out.representatives.size();
    out.representatives.push_back(ex);
    for (const auto& m : member_elems) out.class_of[g.index_of(g.add(ex, m))] = id;
  }
  return out;
}

}  // namespace quasienum
