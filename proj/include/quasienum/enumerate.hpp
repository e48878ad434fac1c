#ifndef QUASIENUM_ENUMERATE_HPP
#define QUASIENUM_ENUMERATE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "quasienum/abelian.hpp"
#include "quasienum/endo.hpp"

namespace quasienum {

/// Per-group counts: |Aut(G)|, conjugacy classes of Aut(G), orbits of the
/// simultaneous conjugation action on Aut(G)^2 (all and commuting pairs), and
/// the numbers of central and medial quasigroups over G.
struct GroupReport {
  AbelianGroup group;
  Count aut_order;
  Count conj_classes;
  Count pair_orbits;
  Count cq;
  Count commuting_pair_orbits;
  Count mq;

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

/// cq >= |O|, mq >= |O_c|, mq <= cq, |O_c| <= |O|, and cq = mq, |O| = |O_c|
/// for cyclic groups.
bool bounds_hold(const GroupReport& r);

/// A group of an order report; `report` is empty when it was not computed.
struct GroupResult {
  AbelianGroup group;
  std::optional<GroupReport> report;
  std::string unavailable_reason;
};

struct OrderReport {
  std::uint64_t n = 1;
  std::optional<Count> cq;  // empty if any group is unavailable
  std::optional<Count> mq;
  std::vector<GroupResult> per_group;
};

class ReportCache;

struct EnumerationOptions {
  std::uint64_t aut_budget = kDefaultAutBudget;
  unsigned jobs = 1;
  ReportCache* cache = nullptr;
  /// Receives short progress messages from long computations.
  std::function<void(const std::string&)> progress;
};

/// Runs the enumeration directly on g (no closed form, no coprime split).
/// Throws ResourceLimitError when |Aut(g)| exceeds the budget.
GroupReport enumerate_group(const AbelianGroup& g, const EnumerationOptions& options = {});

/// Straightforward enumeration built only from the element-list operations
/// of the action module. Slow; intended for small groups and cross-checks.
GroupReport enumerate_group_reference(const AbelianGroup& g,
                                      std::uint64_t aut_budget = kDefaultAutBudget);

/// mq(g) with the inner loop restricted to C_A(f) instead of filtering pairs
/// of A by commutativity.
Count medial_count_restricted(const AbelianGroup& g, std::uint64_t aut_budget = kDefaultAutBudget);

/// |Aut(g)| and its number of conjugacy classes.
struct AutSummary {
  Count aut_order;
  Count conj_classes;
};
AutSummary aut_summary(const AbelianGroup& g, const EnumerationOptions& options = {});

/// Report of H x K from reports of coprime H and K.
GroupReport combine_coprime(const GroupReport& a, const GroupReport& b);

/// p^{2k} + p^{2k-2} - p^{k-1} - sum_{i=k-1}^{2k-1} p^i.
Count cq_cyclic_prime_power(std::uint64_t p, unsigned k);

/// Full report for C_{p^k}: Aut is abelian of order p^{k-1}(p-1).
GroupReport cyclic_prime_power_report(std::uint64_t p, unsigned k);

/// Report for any g: closed form for cyclic p-groups, products over primary
/// components, direct enumeration otherwise. Uses and fills options.cache.
GroupReport report_for(const AbelianGroup& g, const EnumerationOptions& options = {});

/// Totals over all abelian groups of order n; groups over budget are listed
/// with a reason and make the totals unavailable.
OrderReport cq_mq_of_order(std::uint64_t n, const EnumerationOptions& options = {});

/// One central quasigroup per isomorphism class over g.
struct Representative {
  Endomorphism phi;
  Endomorphism psi;
  GroupElement c;
  bool medial = false;
};

/// Ordered by conjugacy class of phi, then psi by key, then c by index.
std::vector<Representative> classify_representatives(const AbelianGroup& g,
                                                     const EnumerationOptions& options = {});

/// Counts are JSON numbers when they fit in 64 bits, decimal strings otherwise.
nlohmann::json count_to_json(const Count& c);
Count count_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GroupReport& r);
GroupReport report_from_json(const nlohmann::json& j);

/// Memoizes group reports by descriptor, optionally persisted as one JSON file
/// per group in a directory. Thread-safe.
class ReportCache {
 public:
  static constexpr int kSchemaVersion = 1;

  ReportCache() = default;
  explicit ReportCache(std::filesystem::path dir);

  std::optional<GroupReport> get(const AbelianGroup& g);
  void put(const GroupReport& r);
  const std::optional<std::filesystem::path>& directory() const { return dir_; }

 private:
  std::filesystem::path file_for(const AbelianGroup& g) const;

  std::optional<std::filesystem::path> dir_;
  std::map<std::string, GroupReport> memory_;
  std::mutex mutex_;
};

}  // namespace quasienum

#endif  // QUASIENUM_ENUMERATE_HPP
