#include "quasienum/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "quasienum/action.hpp"

namespace quasienum {

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

/// Element arithmetic of G on mixed-radix indices.
class ElementTable {
 public:
  static constexpr std::uint64_t kAddTableLimit = 1024;

  explicit ElementTable(const EndoSpace& space) : space_(space) {
    const auto& g = space.group();
    n_ = g.order();
    r_ = g.rank();
    weights_.assign(r_, 1);
    for (std::size_t i = r_; i-- > 1;) weights_[i - 1] = weights_[i] * g.modulus(i);
    coords_.resize(n_ * r_);
    for (std::uint64_t x = 0; x < n_; ++x) {
      const auto e = g.element_at(x);
      std::copy(e.coords.begin(), e.coords.end(), coords_.begin() + x * r_);
    }
    if (n_ <= kAddTableLimit) {
      add_.resize(n_ * n_);
      for (std::uint64_t a = 0; a < n_; ++a)
        for (std::uint64_t b = 0; b < n_; ++b) add_[a * n_ + b] = slow_add(a, b);
    }
  }

  std::uint64_t order() const { return n_; }
  /// Index of the element with a single 1 in coordinate i.
  std::uint32_t unit(std::size_t i) const { return static_cast<std::uint32_t>(weights_[i]); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return add_.empty() ? slow_add(a, b) : add_[std::uint64_t{a} * n_ + b];
  }

  std::uint32_t apply(const Matrix& m, std::uint32_t x) const {
    std::array<std::uint64_t, kMaxRank> y{};
    space_.apply(m, coords_.data() + std::uint64_t{x} * r_, y.data());
    return index(y.data());
  }

 private:
  std::uint32_t index(const std::uint64_t* c) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < r_; ++i) s += c[i] * weights_[i];
    return static_cast<std::uint32_t>(s);
  }

  std::uint32_t slow_add(std::uint64_t a, std::uint64_t b) const {
    std::array<std::uint64_t, kMaxRank> y{};
    const auto& g = space_.group();
    for (std::size_t i = 0; i < r_; ++i)
      y[i] = (coords_[a * r_ + i] + coords_[b * r_ + i]) % g.modulus(i);
    return index(y.data());
  }

  const EndoSpace& space_;
  std::uint64_t n_ = 1;
  std::size_t r_ = 0;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> coords_;
  std::vector<std::uint32_t> add_;
};

/// G/U for U = Im(m): coset ids are assigned in ascending order of their
/// minimal element.
struct Quotient {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> reps;
  std::vector<std::uint32_t> members;  // of U
  std::vector<std::uint8_t> in_u;

  void build(const ElementTable& t, const EndoSpace& space, const Matrix& m) {
    const auto n = t.order();
    in_u.assign(n, 0);
    members.assign(1, 0);
    in_u[0] = 1;
    std::array<std::uint32_t, kMaxRank> cols{};
    for (std::size_t j = 0; j < space.rank(); ++j) cols[j] = t.apply(m, t.unit(j));
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t j = 0; j < space.rank(); ++j) {
        const auto y = t.add(members[head], cols[j]);
        if (!in_u[y]) {
          in_u[y] = 1;
          members.push_back(y);
        }
      }
    }
    class_of.assign(n, kNone);
    reps.clear();
    for (std::uint32_t x = 0; x < n; ++x) {
      if (class_of[x] != kNone) continue;
      const auto id = static_cast<std::uint32_t>(reps.size());
      reps.push_back(x);
      for (auto u : members) class_of[t.add(x, u)] = id;
    }
  }

  std::size_t size() const { return reps.size(); }
};

/// Union-find over coset ids; roots are minimal ids.
struct CosetOrbits {
  std::vector<std::uint32_t> parent;
  std::size_t components = 0;

  void reset(std::size_t n) {
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0u);
    components = n;
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[std::max(a, b)] = std::min(a, b);
    --components;
  }
  /// Merges the orbits joined by h; the zero coset is always fixed, so two
  /// components is the final state once reached.
  void apply(const ElementTable& t, const Quotient& q, const Matrix& h) {
    for (std::uint32_t c = 1; c < q.size() && components > 2; ++c)
      unite(c, q.class_of[t.apply(h, q.reps[c])]);
  }
};

struct RawRep {
  EndoKey phi;
  EndoKey psi;
  std::uint32_t c;
  bool medial;
};

struct ClassResult {
  std::uint64_t pair_orbits = 0;
  std::uint64_t commuting = 0;
  std::uint64_t cq = 0;
  std::uint64_t mq = 0;
  std::vector<RawRep> reps;
};

/// C_A(f), either listed in full or by generators.
struct Centralizer {
  std::uint64_t order = 0;
  bool listed = false;
  std::vector<Matrix> elems;
  std::vector<Matrix> inv;
};

struct Worker {
  explicit Worker(const EndoSpace& s) : visited(s), scratch(s), table(s) {}

  KeySet visited;
  KeySet scratch;
  ElementTable table;
  Quotient quotient;
  CosetOrbits orbits;
  std::vector<EndoKey> queue, t_key, tinv_key, edge_key;
  std::vector<std::pair<EndoKey, std::uint32_t>> sorted;
  std::vector<Matrix> stab_gens;
};

class Engine {
 public:
  static constexpr std::size_t kSampleSize = 64;
  static constexpr std::uint64_t kStabClosureLimit = 4096;

  Engine(const AutGroup& a, const EnumerationOptions& options, bool collect)
      : a_(a), space_(*a.space()), options_(options), collect_(collect) {
    Worker w(space_);
    a_gens_ = generators_from_scan(w, [](const Matrix&) { return true; }, a_.size(), 1);
    for (const auto& m : a_gens_) a_gens_inv_.push_back(inverse_in(m, a_.size()));
    compute_classes(w);
  }

  std::size_t class_count() const { return class_reps_.size(); }

  GroupReport run() {
    const std::size_t nx = class_reps_.size();
    std::vector<ClassResult> results(nx);
    std::atomic<std::size_t> next{0}, done{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      try {
        Worker w(space_);
        for (std::size_t i; (i = next++) < nx;) {
          process_class(i, w, results[i]);
          const auto d = ++done;
          if (options_.progress)
            options_.progress(a_.group().descriptor() + ": class " + std::to_string(d) + "/" +
                              std::to_string(nx));
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = nx;
      }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options_.jobs, static_cast<unsigned>(nx)));
    if (jobs == 1) {
      work();
    } else {
      std::vector<std::thread> threads;
      for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work);
      for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);

    GroupReport r{a_.group(), Count(a_.size()), Count(nx), 0, 0, 0, 0};
    Count expected_pairs = 0;
    for (std::size_t i = 0; i < nx; ++i) {
      r.pair_orbits += results[i].pair_orbits;
      r.commuting_pair_orbits += results[i].commuting;
      r.cq += results[i].cq;
      r.mq += results[i].mq;
      expected_pairs += a_.size() / class_sizes_[i];
      for (auto& rep : results[i].reps) reps_.push_back(rep);
    }
    // Burnside: the number of orbits on A x A is the sum of |C_A(f)| over X.
    if (r.pair_orbits != expected_pairs)
      throw std::logic_error("pair orbit count disagrees with the class equation");
    return r;
  }

  const std::vector<RawRep>& representatives() const { return reps_; }

 private:
  Matrix inverse_in(const Matrix& m, std::uint64_t order) const {
    return space_.inverse(m, Count(order));
  }

  void conj(const Matrix& s, const Matrix& x, const Matrix& s_inv, Matrix& tmp, Matrix& out) const {
    space_.compose(s, x, tmp);
    space_.compose(tmp, s_inv, out);
  }

  /// Generators of the subgroup {h in A : pred(h)} of the given order, taken
  /// greedily from a pseudo-random sample of its members.
  template <class Pred>
  std::vector<Matrix> generators_from_scan(Worker& w, Pred pred, std::uint64_t order,
                                           std::uint64_t seed) const {
    std::vector<Matrix> gens;
    if (order == 1) return gens;
    std::mt19937_64 rng(seed);
    std::vector<EndoKey> sample;
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Matrix h = a_.matrix(i);
      if (!pred(h)) continue;
      ++seen;
      if (sample.size() < kSampleSize) {
        sample.push_back(a_.key(i));
      } else {
        const auto j = std::uniform_int_distribution<std::uint64_t>(0, seen - 1)(rng);
        if (j < kSampleSize) sample[j] = a_.key(i);
      }
    }
    if (seen != order) throw std::logic_error("subgroup scan found an unexpected order");
    if (greedy_generators(space_, sample, order, w.scratch, gens)) return gens;
    std::vector<EndoKey> all;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (pred(a_.matrix(i))) all.push_back(a_.key(i));
    std::shuffle(all.begin(), all.end(), rng);
    if (!greedy_generators(space_, all, order, w.scratch, gens))
      throw std::logic_error("subgroup is not generated by its own elements");
    return gens;
  }

  void compute_classes(Worker& w) {
    w.visited.clear();
    Matrix tmp, y;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const EndoKey k = a_.key(i);
      if (w.visited.contains(k)) continue;
      w.visited.insert(k);
      w.queue.assign(1, k);
      for (std::size_t head = 0; head < w.queue.size(); ++head) {
        const Matrix x = space_.unpack(w.queue[head]);
        for (std::size_t s = 0; s < a_gens_.size(); ++s) {
          conj(a_gens_[s], x, a_gens_inv_[s], tmp, y);
          const EndoKey yk = space_.pack(y);
          if (w.visited.insert(yk)) w.queue.push_back(yk);
        }
      }
      class_reps_.push_back(k);
      class_sizes_.push_back(w.queue.size());
    }
  }

  Centralizer centralizer_of(Worker& w, std::size_t ci, const Matrix& f) const {
    Centralizer c;
    c.order = a_.size() / class_sizes_[ci];
    if (c.order <= kFullSweepLimit) {
      c.listed = true;
      Matrix fh, hf;
      for (std::size_t i = 0; i < a_.size() && c.elems.size() < c.order; ++i) {
        const Matrix h = a_.matrix(i);
        space_.compose(f, h, fh);
        space_.compose(h, f, hf);
        if (fh == hf) c.elems.push_back(h);
      }
      if (c.elems.size() != c.order) throw std::logic_error("centralizer scan came up short");
    } else if (class_sizes_[ci] == 1) {
      c.elems = a_gens_;
    } else {
      c.elems = generators_from_scan(
          w,
          [&](const Matrix& h) {
            Matrix fh, hf;
            space_.compose(f, h, fh);
            space_.compose(h, f, hf);
            return fh == hf;
          },
          c.order, class_reps_[ci]);
    }
    for (const auto& m : c.elems) c.inv.push_back(inverse_in(m, c.order));
    return c;
  }

  void process_class(std::size_t ci, Worker& w, ClassResult& out) const {
    const EndoKey fkey = class_reps_[ci];
    const Matrix f = space_.unpack(fkey);
    const Centralizer cen = centralizer_of(w, ci, f);
    const Matrix id = space_.identity();
    const EndoKey id_key = space_.pack(id);
    Matrix tmp, y, fg, gf, h;
    std::vector<std::size_t> stab;

    w.visited.clear();
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const EndoKey gkey = a_.key(i);
      if (w.visited.contains(gkey)) continue;
      const Matrix g = space_.unpack(gkey);
      const Matrix m = space_.one_minus(f, g);
      const bool invertible = space_.is_invertible(m);
      space_.compose(f, g, fg);
      space_.compose(g, f, gf);
      const bool commuting = fg == gf;
      if (!invertible) w.quotient.build(w.table, space_, m);
      const std::size_t nq = invertible ? 1 : w.quotient.size();
      const bool need_stab = nq > 2;
      if (need_stab) w.orbits.reset(nq);

      if (cen.listed) {
        stab.clear();
        for (std::size_t j = 0; j < cen.elems.size(); ++j) {
          conj(cen.elems[j], g, cen.inv[j], tmp, y);
          const EndoKey yk = space_.pack(y);
          w.visited.insert(yk);
          if (yk == gkey) stab.push_back(j);
        }
        if (need_stab)
          for (auto j : stab) {
            if (w.orbits.components <= 2) break;
            w.orbits.apply(w.table, w.quotient, cen.elems[j]);
          }
      } else {
        // Breadth-first orbit under the generators; with a transversal when
        // the stabilizer is needed (Schreier generators t_y^-1 s t_x).
        const std::size_t ng = cen.elems.size();
        w.visited.insert(gkey);
        w.queue.assign(1, gkey);
        if (need_stab) {
          w.t_key.assign(1, id_key);
          w.tinv_key.assign(1, id_key);
          w.edge_key.clear();
        }
        for (std::size_t head = 0; head < w.queue.size(); ++head) {
          const Matrix x = space_.unpack(w.queue[head]);
          Matrix t, tinv;
          if (need_stab) {
            t = space_.unpack(w.t_key[head]);
            tinv = space_.unpack(w.tinv_key[head]);
          }
          for (std::size_t s = 0; s < ng; ++s) {
            conj(cen.elems[s], x, cen.inv[s], tmp, y);
            const EndoKey yk = space_.pack(y);
            if (w.visited.insert(yk)) {
              w.queue.push_back(yk);
              if (need_stab) {
                space_.compose(cen.elems[s], t, tmp);
                w.t_key.push_back(space_.pack(tmp));
                space_.compose(tinv, cen.inv[s], tmp);
                w.tinv_key.push_back(space_.pack(tmp));
              }
            }
            if (need_stab) w.edge_key.push_back(yk);
          }
        }
        if (need_stab) stabilizer_orbits(w, cen, ng);
      }

      const std::uint64_t n_orbits = need_stab ? w.orbits.components : nq;
      ++out.pair_orbits;
      out.cq += n_orbits;
      if (commuting) {
        ++out.commuting;
        out.mq += n_orbits;
      }
      if (collect_) {
        if (nq == 1) {
          out.reps.push_back({fkey, gkey, 0, commuting});
        } else if (!need_stab) {
          out.reps.push_back({fkey, gkey, 0, commuting});
          out.reps.push_back({fkey, gkey, w.quotient.reps[1], commuting});
        } else {
          for (std::uint32_t c = 0; c < nq; ++c)
            if (w.orbits.find(c) == c) out.reps.push_back({fkey, gkey, w.quotient.reps[c], commuting});
        }
      }
    }
  }

  /// Orbits of the stabilizer of the current BFS root on G/U, from Schreier
  /// generators of the orbit recorded in the worker.
  void stabilizer_orbits(Worker& w, const Centralizer& cen, std::size_t ng) const {
    const std::size_t orbit = w.queue.size();
    if (cen.order % orbit != 0) throw std::logic_error("orbit size does not divide the group order");
    const std::uint64_t stab_order = cen.order / orbit;
    if (stab_order == 1) return;

    w.sorted.resize(orbit);
    for (std::size_t i = 0; i < orbit; ++i) w.sorted[i] = {w.queue[i], static_cast<std::uint32_t>(i)};
    std::sort(w.sorted.begin(), w.sorted.end());
    auto position = [&](EndoKey k) {
      const auto it = std::lower_bound(w.sorted.begin(), w.sorted.end(),
                                       std::pair<EndoKey, std::uint32_t>{k, 0});
      return it->second;
    };

    const bool track = stab_order <= kStabClosureLimit;
    const EndoKey id_key = space_.pack(space_.identity());
    w.stab_gens.clear();
    if (track) closure_size(space_, w.stab_gens, w.scratch);
    Matrix tmp, h;
    for (std::size_t x = 0; x < orbit; ++x) {
      const Matrix t = space_.unpack(w.t_key[x]);
      for (std::size_t s = 0; s < ng; ++s) {
        const auto k = position(w.edge_key[x * ng + s]);
        space_.compose(cen.elems[s], t, tmp);
        space_.compose(space_.unpack(w.tinv_key[k]), tmp, h);
        const EndoKey hk = space_.pack(h);
        if (hk == id_key) continue;
        if (track) {
          if (w.scratch.contains(hk)) continue;
          w.stab_gens.push_back(h);
          w.orbits.apply(w.table, w.quotient, h);
          if (w.orbits.components <= 2) return;
          const auto size = closure_size(space_, w.stab_gens, w.scratch, stab_order);
          if (size == stab_order) return;
          if (size > stab_order) throw std::logic_error("Schreier generators escape the stabilizer");
        } else {
          w.orbits.apply(w.table, w.quotient, h);
          if (w.orbits.components <= 2) return;
        }
      }
    }
    if (track) throw std::logic_error("Schreier generators do not generate the stabilizer");
  }

  const AutGroup& a_;
  const EndoSpace& space_;
  const EnumerationOptions& options_;
  bool collect_;
  std::vector<Matrix> a_gens_, a_gens_inv_;
  std::vector<EndoKey> class_reps_;
  std::vector<std::uint64_t> class_sizes_;
  std::vector<RawRep> reps_;
};

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GroupReport trivial_report(const AbelianGroup& g) { return {g, 1, 1, 1, 1, 1, 1}; }

}  // namespace

bool bounds_hold(const GroupReport& r) {
  if (r.cq < r.pair_orbits || r.mq < r.commuting_pair_orbits) return false;
  if (r.mq > r.cq || r.commuting_pair_orbits > r.pair_orbits) return false;
  if (r.group.is_cyclic() && (r.cq != r.mq || r.pair_orbits != r.commuting_pair_orbits)) return false;
  return true;
}

GroupReport enumerate_group(const AbelianGroup& g, const EnumerationOptions& options) {
  const AutGroup a = aut_group(g, options.aut_budget);
  Engine engine(a, options, false);
  return engine.run();
}

AutSummary aut_summary(const AbelianGroup& g, const EnumerationOptions& options) {
  const AutGroup a = aut_group(g, options.aut_budget);
  Engine engine(a, options, false);
  return {Count(a.size()), Count(engine.class_count())};
}

GroupReport enumerate_group_reference(const AbelianGroup& g, std::uint64_t aut_budget) {
  const AutGroup a = aut_group(g, aut_budget);
  std::vector<std::size_t> all(a.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  GroupReport r{g, Count(a.size()), 0, 0, 0, 0, 0};
  const auto x = conjugacy_class_reps(a);
  r.conj_classes = x.count();
  for (auto f : x.representatives) {
    const auto cf = centralizer(a, f);
    const auto y = orbit_reps_conjugation(a, cf, all);
    for (auto psi : y.representatives) {
      const auto h = intersect(cf, centralizer(a, psi));
      const auto fm = a.member(f), pm = a.member(psi);
      const auto n = orbit_reps_on_cosets(a, h, image(one_minus(fm, pm))).count();
      r.pair_orbits += 1;
      r.cq += n;
      if (compose(fm, pm) == compose(pm, fm)) {
        r.commuting_pair_orbits += 1;
        r.mq += n;
      }
    }
  }
  return r;
}

Count medial_count_restricted(const AbelianGroup& g, std::uint64_t aut_budget) {
  const AutGroup a = aut_group(g, aut_budget);
  Count mq = 0;
  for (auto f : conjugacy_class_reps(a).representatives) {
    const auto cf = centralizer(a, f);
    for (auto psi : orbit_reps_conjugation(a, cf, cf).representatives) {
      const auto h = intersect(cf, centralizer(a, psi));
      mq += orbit_reps_on_cosets(a, h, image(one_minus(a.member(f), a.member(psi)))).count();
    }
  }
  return mq;
}

GroupReport combine_coprime(const GroupReport& a, const GroupReport& b) {
  if (std::gcd(a.group.order(), b.group.order()) != 1)
    throw GroupError("combine_coprime needs groups of coprime order, got " +
                     a.group.descriptor() + " and " + b.group.descriptor());
  return {direct_product(a.group, b.group),
          a.aut_order * b.aut_order,
          a.conj_classes * b.conj_classes,
          a.pair_orbits * b.pair_orbits,
          a.cq * b.cq,
          a.commuting_pair_orbits * b.commuting_pair_orbits,
          a.mq * b.mq};
}

Count cq_cyclic_prime_power(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw GroupError(std::to_string(p) + " is not prime");
  if (k == 0) throw GroupError("exponent must be positive");
  const Count pp = p;
  Count value = boost::multiprecision::pow(pp, 2 * k) + boost::multiprecision::pow(pp, 2 * k - 2) -
                boost::multiprecision::pow(pp, k - 1);
  for (unsigned i = k - 1; i <= 2 * k - 1; ++i) value -= boost::multiprecision::pow(pp, i);
  return value;
}

GroupReport cyclic_prime_power_report(std::uint64_t p, unsigned k) {
  const Count cq = cq_cyclic_prime_power(p, k);
  const Count a = boost::multiprecision::pow(Count(p), k - 1) * (p - 1);
  return {make_group({{p, k}}), a, a, a * a, cq, a * a, cq};
}

GroupReport report_for(const AbelianGroup& g, const EnumerationOptions& options) {
  if (options.cache)
    if (auto hit = options.cache->get(g)) return *hit;
  GroupReport r;
  const auto primes = g.primes();
  if (g.is_trivial()) {
    r = trivial_report(g);
  } else if (primes.size() > 1) {
    r = report_for(g.primary_component(primes[0]), options);
    for (std::size_t i = 1; i < primes.size(); ++i)
      r = combine_coprime(r, report_for(g.primary_component(primes[i]), options));
  } else if (g.is_cyclic()) {
    r = cyclic_prime_power_report(primes[0], g.factors()[0].exponent);
  } else {
    r = enumerate_group(g, options);
  }
  if (options.cache) options.cache->put(r);
  return r;
}

OrderReport cq_mq_of_order(std::uint64_t n, const EnumerationOptions& options) {
  if (n == 0) throw GroupError("order must be positive");
  OrderReport out;
  out.n = n;
  Count cq = 0, mq = 0;
  bool complete = true;
  for (const auto& g : abelian_groups_of_order(n)) {
    GroupResult gr{g, std::nullopt, {}};
    try {
      gr.report = report_for(g, options);
      cq += gr.report->cq;
      mq += gr.report->mq;
    } catch (const ResourceLimitError& e) {
      gr.unavailable_reason = e.what();
      complete = false;
    }
    out.per_group.push_back(std::move(gr));
  }
  if (complete) {
    out.cq = cq;
    out.mq = mq;
  }
  return out;
}

std::vector<Representative> classify_representatives(const AbelianGroup& g,
                                                     const EnumerationOptions& options) {
  const AutGroup a = aut_group(g, options.aut_budget);
  Engine engine(a, options, true);
  engine.run();
  std::vector<Representative> out;
  out.reserve(engine.representatives().size());
  for (const auto& r : engine.representatives())
    out.push_back({Endomorphism::from_key(a.space(), r.phi), Endomorphism::from_key(a.space(), r.psi),
                   g.element_at(r.c), r.medial});
  return out;
}

// ---------------------------------------------------------------------------
// JSON and cache

nlohmann::json count_to_json(const Count& c) {
  if (c >= 0 && c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
  return c.str();
}

Count count_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Count(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Count(j.get<std::int64_t>());
  if (j.is_string()) return Count(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

nlohmann::json to_json(const GroupReport& r) {
  return {{"descriptor", r.group.descriptor()},
          {"order", r.group.order()},
          {"aut_order", count_to_json(r.aut_order)},
          {"conj_classes", count_to_json(r.conj_classes)},
          {"pair_orbits", count_to_json(r.pair_orbits)},
          {"cq", count_to_json(r.cq)},
          {"commuting_pair_orbits", count_to_json(r.commuting_pair_orbits)},
          {"mq", count_to_json(r.mq)}};
}

GroupReport report_from_json(const nlohmann::json& j) {
  return {parse_group(j.at("descriptor").get<std::string>()),
          count_from_json(j.at("aut_order")),
          count_from_json(j.at("conj_classes")),
          count_from_json(j.at("pair_orbits")),
          count_from_json(j.at("cq")),
          count_from_json(j.at("commuting_pair_orbits")),
          count_from_json(j.at("mq"))};
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(*dir_);
}

std::filesystem::path ReportCache::file_for(const AbelianGroup& g) const {
  return *dir_ / (g.descriptor() + ".json");
}

std::optional<GroupReport> ReportCache::get(const AbelianGroup& g) {
  std::lock_guard lock(mutex_);
  if (auto it = memory_.find(g.descriptor()); it != memory_.end()) return it->second;
  if (!dir_) return std::nullopt;
  std::ifstream in(file_for(g));
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("schema_version").get<int>() != kSchemaVersion) return std::nullopt;
    auto r = report_from_json(j.at("report"));
    if (!(r.group == g)) return std::nullopt;
    memory_.emplace(g.descriptor(), r);
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ReportCache::put(const GroupReport& r) {
  std::lock_guard lock(mutex_);
  memory_.insert_or_assign(r.group.descriptor(), r);
  if (!dir_) return;
  const auto target = file_for(r.group);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << nlohmann::json{{"schema_version", kSchemaVersion}, {"report", to_json(r)}}.dump(2) << '\n';
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace quasienum
