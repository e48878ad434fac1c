#include "quasienum/quasigroup.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace quasienum {

CayleyTable::CayleyTable(std::vector<std::vector<std::uint32_t>> rows) : n(rows.size()) {
  cells.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("Cayley table must be square");
    cells.insert(cells.end(), row.begin(), row.end());
  }
}

std::vector<std::vector<std::uint32_t>> CayleyTable::rows() const {
  std::vector<std::vector<std::uint32_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(cells.begin() + i * n, cells.begin() + (i + 1) * n);
  return out;
}

AffineTriple::AffineTriple(Endomorphism phi_, Endomorphism psi_, GroupElement c_)
    : phi(std::move(phi_)), psi(std::move(psi_)), c(std::move(c_)) {
  if (!(phi.group() == psi.group())) throw GroupError("phi and psi act on different groups");
  if (!phi.group().contains(c)) throw GroupError("constant is not an element of the group");
  if (!is_automorphism(phi) || !is_automorphism(psi))
    throw GroupError("phi and psi must be automorphisms");
}

CayleyTable build_quasigroup(const AffineTriple& t) {
  const auto& g = t.group();
  const auto elements = g.elements();
  std::vector<GroupElement> fx, gy;
  fx.reserve(elements.size());
  gy.reserve(elements.size());
  for (const auto& x : elements) {
    fx.push_back(apply(t.phi, x));
    gy.push_back(g.add(apply(t.psi, x), t.c));
  }
  CayleyTable out;
  out.n = elements.size();
  out.cells.resize(out.n * out.n);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = 0; j < out.n; ++j)
      out(i, j) = static_cast<std::uint32_t>(g.index_of(g.add(fx[i], gy[j])));
  return out;
}

bool is_latin(const CayleyTable& t) {
  if (t.cells.size() != t.n * t.n) return false;
  std::vector<std::uint8_t> row_seen(t.n), col_seen(t.n);
  for (std::size_t i = 0; i < t.n; ++i) {
    std::fill(row_seen.begin(), row_seen.end(), 0);
    std::fill(col_seen.begin(), col_seen.end(), 0);
    for (std::size_t j = 0; j < t.n; ++j) {
      const auto r = t(i, j), c = t(j, i);
      if (r >= t.n || c >= t.n || row_seen[r] || col_seen[c]) return false;
      row_seen[r] = col_seen[c] = 1;
    }
  }
  return true;
}

bool is_medial(const CayleyTable& t) {
  const std::size_t n = t.n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          if (t(t(x, y), t(u, v)) != t(t(x, u), t(y, v))) return false;
  return true;
}

bool is_isomorphic_affine(const AffineTriple& t1, const AffineTriple& t2, std::uint64_t aut_budget) {
  const auto& g = t1.group();
  if (!(g == t2.group())) throw GroupError("triples over different groups");
  const auto& space = *t1.phi.space();
  const Matrix phi1 = t1.phi.matrix(), psi1 = t1.psi.matrix();
  const Matrix phi2 = t2.phi.matrix(), psi2 = t2.psi.matrix();
  const AutGroup a = aut_group(g, aut_budget);
  const Subgroup u = image(one_minus(t1.phi, t1.psi));
  const auto u_members = u.element_indices();
  Matrix lhs, rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Matrix gamma = a.matrix(i);
    // phi2 = gamma phi1 gamma^-1  <=>  phi2 gamma = gamma phi1
    space.compose(phi2, gamma, lhs);
    space.compose(gamma, phi1, rhs);
    if (!(lhs == rhs)) continue;
    space.compose(psi2, gamma, lhs);
    space.compose(gamma, psi1, rhs);
    if (!(lhs == rhs)) continue;
    const Endomorphism ge(a.space(), gamma);
    for (auto ui : u_members)
      if (apply(ge, g.add(t1.c, g.element_at(ui))) == t2.c) return true;
  }
  return false;
}

namespace {

/// Cycle type of the permutation row (or column) x of t, sorted.
std::vector<std::size_t> cycle_type(const CayleyTable& t, std::size_t x, bool row) {
  std::vector<std::uint8_t> seen(t.n, 0);
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < t.n; ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t y = s; !seen[y]; y = row ? t(x, y) : t(y, x)) {
      seen[y] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Per-element invariant preserved by isomorphisms: cycle types of the left
/// and right translations, plus whether the element is idempotent.
std::vector<std::vector<std::size_t>> signatures(const CayleyTable& t) {
  std::vector<std::vector<std::size_t>> out(t.n);
  for (std::size_t x = 0; x < t.n; ++x) {
    out[x] = cycle_type(t, x, true);
    out[x].push_back(0);
    const auto cols = cycle_type(t, x, false);
    out[x].insert(out[x].end(), cols.begin(), cols.end());
    out[x].push_back(t(x, x) == x ? 1 : 2);
  }
  return out;
}

class IsoSearch {
 public:
  static constexpr std::uint32_t kUnset = 0xffffffffu;

  IsoSearch(const CayleyTable& a, const CayleyTable& b) : a_(a), b_(b) {
    const auto sa = signatures(a), sb = signatures(b);
    std::map<std::vector<std::size_t>, std::uint32_t> ids;
    sig_a_.resize(a.n);
    sig_b_.resize(b.n);
    for (std::size_t x = 0; x < a.n; ++x) sig_a_[x] = ids.emplace(sa[x], ids.size()).first->second;
    for (std::size_t x = 0; x < b.n; ++x) {
      const auto it = ids.find(sb[x]);
      sig_b_[x] = it == ids.end() ? kUnset : it->second;
    }
  }

  bool run() {
    auto ca = sig_a_, cb = sig_b_;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return false;
    std::vector<std::uint32_t> sigma(a_.n, kUnset), inv(a_.n, kUnset);
    return search(sigma, inv);
  }

 private:
  bool assign(std::vector<std::uint32_t>& sigma, std::vector<std::uint32_t>& inv, std::uint32_t x,
              std::uint32_t y) const {
    if (sigma[x] != kUnset) return sigma[x] == y;
    if (inv[y] != kUnset || sig_a_[x] != sig_b_[y]) return false;
    sigma[x] = y;
    inv[y] = x;
    return true;
  }

  /// Closes sigma under s(a(i, j)) = b(s(i), s(j)); false on a conflict.
  bool propagate(std::vector<std::uint32_t>& sigma, std::vector<std::uint32_t>& inv) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t i = 0; i < a_.n; ++i) {
        if (sigma[i] == kUnset) continue;
        for (std::uint32_t j = 0; j < a_.n; ++j) {
          if (sigma[j] == kUnset) continue;
          const auto k = a_(i, j);
          const auto target = b_(sigma[i], sigma[j]);
          const bool fresh = sigma[k] == kUnset;
          if (!assign(sigma, inv, k, target)) return false;
          changed = changed || fresh;
        }
      }
    }
    return true;
  }

  bool search(std::vector<std::uint32_t>& sigma, std::vector<std::uint32_t>& inv) const {
    if (!propagate(sigma, inv)) return false;
    const auto it = std::find(sigma.begin(), sigma.end(), kUnset);
    if (it == sigma.end()) return true;
    const auto x = static_cast<std::uint32_t>(it - sigma.begin());
    for (std::uint32_t y = 0; y < b_.n; ++y) {
      if (inv[y] != kUnset || sig_a_[x] != sig_b_[y]) continue;
      auto s = sigma, v = inv;
      assign(s, v, x, y);
      if (search(s, v)) return true;
    }
    return false;
  }

  const CayleyTable& a_;
  const CayleyTable& b_;
  std::vector<std::uint32_t> sig_a_, sig_b_;
};

}  // namespace

bool brute_force_isomorphic(const CayleyTable& a, const CayleyTable& b) {
  if (a.n != b.n) throw std::invalid_argument("tables of different orders");
  if (a.n > kBruteForceCap)
    throw ResourceLimitError("brute-force isomorphism search is capped at order " +
                                 std::to_string(kBruteForceCap),
                             Count(a.n));
  if (a.n == 0) return true;
  return IsoSearch(a, b).run();
}

void write_table(std::ostream& out, const CayleyTable& t) {
  out << t.n << '\n';
  for (std::size_t i = 0; i < t.n; ++i) {
    for (std::size_t j = 0; j < t.n; ++j) out << (j ? " " : "") << t(i, j);
    out << '\n';
  }
}

CayleyTable read_table(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw std::invalid_argument("Cayley table: missing or invalid order");
  CayleyTable t;
  t.n = static_cast<std::size_t>(n);
  t.cells.resize(t.n * t.n);
  for (auto& cell : t.cells) {
    long long v = -1;
    if (!(in >> v)) throw std::invalid_argument("Cayley table: too few entries");
    if (v < 0 || v >= n) throw std::invalid_argument("Cayley table: entry out of range");
    cell = static_cast<std::uint32_t>(v);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("Cayley table: trailing data");
  return t;
}

nlohmann::json to_json(const CayleyTable& t) { return nlohmann::json(t.rows()); }

}  // namespace quasienum
