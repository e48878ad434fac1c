#include "quasienum/report_io.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace quasienum {

namespace detail {
extern const std::string_view kReferenceCsv;
}

namespace {

using Cell = std::optional<Count> TableRow::*;

constexpr Cell kCells[] = {&TableRow::aut_order, &TableRow::conj_classes,
                           &TableRow::pair_orbits, &TableRow::cq,
                           &TableRow::commuting_pair_orbits, &TableRow::mq};

bool order_row_column(Cell c) { return c == &TableRow::cq || c == &TableRow::mq; }

std::string cell_text(const TableRow& r, Cell c) {
  if (r.is_order_row() && !order_row_column(c)) return "";
  return (r.*c) ? (r.*c)->str() : "?";
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::optional<Count> parse_cell(const std::string& text, const std::string& where) {
  if (text == "?") return std::nullopt;
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw std::invalid_argument(where + ": expected an integer or '?', got '" + text + "'");
  return Count(text);
}

const std::vector<std::string> kColumns = {"order", "gap_id", "descriptor", "aut_order",
                                           "conj_classes", "pair_orbits", "cq",
                                           "commuting_pair_orbits", "mq"};

}  // namespace

const std::vector<std::string>& table_columns() { return kColumns; }

TableRow group_row(const GroupReport& r) {
  return {r.group.order(), "", r.group.descriptor(), r.aut_order, r.conj_classes, r.pair_orbits,
          r.cq, r.commuting_pair_orbits, r.mq};
}

TableRow unknown_group_row(const AbelianGroup& g) {
  TableRow row;
  row.order = g.order();
  row.descriptor = g.descriptor();
  return row;
}

std::vector<TableRow> order_rows(const OrderReport& r) {
  std::vector<TableRow> out;
  for (const auto& gr : r.per_group)
    out.push_back(gr.report ? group_row(*gr.report) : unknown_group_row(gr.group));
  TableRow total;
  total.order = r.n;
  total.cq = r.cq;
  total.mq = r.mq;
  out.push_back(std::move(total));
  return out;
}

std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.order << ',' << r.gap_id << ',' << r.descriptor;
    for (auto c : kCells) out << ',' << cell_text(r, c);
    out << '\n';
  }
  return out.str();
}

std::vector<TableRow> parse_csv(std::string_view text) {
  std::vector<TableRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    for (auto& f : fields) f = trim(f);
    const std::string where = "line " + std::to_string(line_no);
    if (header) {
      if (fields != kColumns) throw std::invalid_argument(where + ": unexpected header");
      header = false;
      continue;
    }
    if (fields.size() != kColumns.size())
      throw std::invalid_argument(where + ": expected " + std::to_string(kColumns.size()) + " fields");
    TableRow r;
    try {
      r.order = std::stoull(fields[0]);
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ": invalid order '" + fields[0] + "'");
    }
    r.gap_id = fields[1];
    r.descriptor = fields[2];
    for (std::size_t i = 0; i < std::size(kCells); ++i) {
      const auto& f = fields[3 + i];
      if (r.is_order_row() && !order_row_column(kCells[i])) {
        if (!f.empty()) throw std::invalid_argument(where + ": order rows only carry cq and mq");
        continue;
      }
      r.*kCells[i] = parse_cell(f, where);
    }
    rows.push_back(std::move(r));
  }
  if (header) throw std::invalid_argument("missing CSV header");
  return rows;
}

nlohmann::json to_json(const std::vector<TableRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["order"] = r.order;
    j["gap_id"] = r.gap_id.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.gap_id);
    j["descriptor"] = r.descriptor.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.descriptor);
    for (std::size_t i = 0; i < std::size(kCells); ++i) {
      const auto& cell = r.*kCells[i];
      j[kColumns[3 + i]] = cell ? count_to_json(*cell) : nlohmann::json(nullptr);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<TableRow> rows_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of rows");
  std::vector<TableRow> rows;
  for (const auto& o : j) {
    TableRow r;
    r.order = o.at("order").get<std::uint64_t>();
    if (!o.at("gap_id").is_null()) r.gap_id = o.at("gap_id").get<std::string>();
    if (!o.at("descriptor").is_null()) r.descriptor = o.at("descriptor").get<std::string>();
    for (std::size_t i = 0; i < std::size(kCells); ++i) {
      const auto& v = o.at(kColumns[3 + i]);
      if (!v.is_null()) r.*kCells[i] = count_from_json(v);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_text(const std::vector<TableRow>& rows) {
  std::vector<std::vector<std::string>> cells{kColumns};
  for (const auto& r : rows) {
    std::vector<std::string> line{std::to_string(r.order), r.gap_id,
                                  r.is_order_row() ? "total" : r.descriptor};
    for (auto c : kCells) line.push_back(cell_text(r, c));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      if (i < 3)
        out << std::left << std::setw(static_cast<int>(width[i])) << line[i];
      else
        out << std::right << std::setw(static_cast<int>(width[i])) << line[i];
    }
    out << '\n';
  }
  return out.str();
}

const std::vector<FixtureRow>& fixture_rows() {
  static const std::vector<FixtureRow> rows = parse_csv(detail::kReferenceCsv);
  return rows;
}

void annotate_gap_ids(std::vector<TableRow>& rows) {
  static const auto ids = [] {
    std::map<std::string, std::string> m;
    for (const auto& r : fixture_rows())
      if (!r.is_order_row()) m.emplace(r.descriptor, r.gap_id);
    return m;
  }();
  for (auto& r : rows) {
    if (r.is_order_row() || !r.gap_id.empty()) continue;
    if (auto it = ids.find(r.descriptor); it != ids.end()) r.gap_id = it->second;
  }
}

std::optional<std::string> check_fixture_row(const FixtureRow& row) {
  if (row.is_order_row()) return std::nullopt;
  try {
    const auto g = parse_group(row.descriptor);
    if (g.order() != row.order) return row.descriptor + " does not have order " + std::to_string(row.order);
    if (g.descriptor() != row.descriptor) return row.descriptor + " is not canonical";
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
  auto le = [](const std::optional<Count>& a, const std::optional<Count>& b) { return !a || !b || *a <= *b; };
  if (!le(row.pair_orbits, row.cq) || !le(row.commuting_pair_orbits, row.mq) || !le(row.mq, row.cq) ||
      !le(row.commuting_pair_orbits, row.pair_orbits))
    return row.descriptor + ": known cells violate the report bounds";
  return std::nullopt;
}

VerifySummary verify_fixture(const std::vector<FixtureRow>& fixture, std::uint64_t max_order,
                             const EnumerationOptions& options, bool direct) {
  VerifySummary s;
  ReportCache local;
  EnumerationOptions opts = options;
  if (!opts.cache) opts.cache = &local;

  auto compare = [&](const std::string& label, const char* column, const std::optional<Count>& expected,
                     const Count& actual) {
    if (!expected) return;
    if (*expected == actual) {
      ++s.matched;
    } else {
      ++s.mismatched;
      s.mismatches.push_back(label + " " + column + ": expected " + expected->str() + ", got " + actual.str());
    }
  };
  auto count_known = [](const TableRow& r, bool order_row) {
    std::size_t known = 0, unknown = 0;
    for (auto c : kCells) {
      if (order_row && !order_row_column(c)) continue;
      ((r.*c) ? known : unknown) += 1;
    }
    return std::pair{known, unknown};
  };

  for (const auto& row : fixture) {
    if (row.order > max_order) continue;
    const auto [known, unknown] = count_known(row, row.is_order_row());
    s.unknown_skipped += unknown;
    if (known == 0) continue;
    const std::string label = row.is_order_row() ? "order " + std::to_string(row.order) : row.descriptor;

    if (row.is_order_row()) {
      const auto r = cq_mq_of_order(row.order, opts);
      if (!r.cq) {
        s.unavailable += known;
        s.notes.push_back(label + ": totals unavailable within the budget");
        continue;
      }
      compare(label, "cq", row.cq, *r.cq);
      compare(label, "mq", row.mq, *r.mq);
      continue;
    }

    const auto g = parse_group(row.descriptor);
    const bool needs_pairs = row.pair_orbits || row.cq || row.commuting_pair_orbits || row.mq;
    try {
      if (needs_pairs) {
        const auto r = direct ? enumerate_group(g, opts) : report_for(g, opts);
        compare(label, "aut_order", row.aut_order, r.aut_order);
        compare(label, "conj_classes", row.conj_classes, r.conj_classes);
        compare(label, "pair_orbits", row.pair_orbits, r.pair_orbits);
        compare(label, "cq", row.cq, r.cq);
        compare(label, "commuting_pair_orbits", row.commuting_pair_orbits, r.commuting_pair_orbits);
        compare(label, "mq", row.mq, r.mq);
      } else {
        const auto a = aut_summary(g, opts);
        compare(label, "aut_order", row.aut_order, a.aut_order);
        compare(label, "conj_classes", row.conj_classes, a.conj_classes);
      }
    } catch (const ResourceLimitError& e) {
      // The closed-form |Aut| needs no enumeration.
      std::size_t left = known;
      if (row.aut_order) {
        compare(label, "aut_order", row.aut_order, aut_order(g));
        --left;
      }
      s.unavailable += left;
      s.notes.push_back(label + ": " + e.what());
    }
  }
  return s;
}

}  // namespace quasienum
