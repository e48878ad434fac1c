#ifndef QUASIENUM_REPORT_IO_HPP
#define QUASIENUM_REPORT_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "quasienum/enumerate.hpp"

namespace quasienum {

/// One line of the per-group / per-order table. Group rows carry a
/// descriptor; order rows leave it empty and only use cq and mq. An empty
/// optional is an unknown value ("?" in CSV, null in JSON).
struct TableRow {
  std::uint64_t order = 1;
  std::string gap_id;
  std::string descriptor;
  std::optional<Count> aut_order;
  std::optional<Count> conj_classes;
  std::optional<Count> pair_orbits;
  std::optional<Count> cq;
  std::optional<Count> commuting_pair_orbits;
  std::optional<Count> mq;

  bool is_order_row() const { return descriptor.empty(); }

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

using FixtureRow = TableRow;

/// Column names in table order.
const std::vector<std::string>& table_columns();

TableRow group_row(const GroupReport& r);
TableRow unknown_group_row(const AbelianGroup& g);
/// Group rows followed by the order row.
std::vector<TableRow> order_rows(const OrderReport& r);

std::string to_csv(const std::vector<TableRow>& rows);
std::vector<TableRow> parse_csv(std::string_view text);
nlohmann::json to_json(const std::vector<TableRow>& rows);
std::vector<TableRow> rows_from_json(const nlohmann::json& j);
/// Aligned plain-text rendering.
std::string to_text(const std::vector<TableRow>& rows);

/// The shipped reference table.
const std::vector<FixtureRow>& fixture_rows();
/// Fills gap ids of group rows from the fixture, where known.
void annotate_gap_ids(std::vector<TableRow>& rows);

/// Descriptor parses to a group of the stated order and known cells satisfy
/// the report bounds. Returns a description of the first problem, if any.
std::optional<std::string> check_fixture_row(const FixtureRow& row);

struct VerifySummary {
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t unknown_skipped = 0;
  std::size_t unavailable = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> notes;

  bool ok() const { return mismatched == 0; }
};

/// Recomputes every known cell of the fixture rows with order <= max_order.
/// Group rows use report_for (enumerate_group when `direct`), order rows use
/// cq_mq_of_order. Cells that cannot be computed within the budget are
/// counted as unavailable.
VerifySummary verify_fixture(const std::vector<FixtureRow>& fixture, std::uint64_t max_order,
                             const EnumerationOptions& options, bool direct = false);

}  // namespace quasienum

#endif  // QUASIENUM_REPORT_IO_HPP
