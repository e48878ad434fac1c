#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "quasienum/abelian.hpp"
#include "quasienum/endo.hpp"
#include "quasienum/enumerate.hpp"
#include "quasienum/quasigroup.hpp"
#include "quasienum/report_io.hpp"

namespace fs = std::filesystem;
using namespace quasienum;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kResource = 2, kMismatch = 3 };

constexpr const char* kBudgetEnv = "QUASIENUM_AUT_BUDGET";

struct Global {
  std::optional<std::uint64_t> aut_budget;
  std::string cache_dir;
  bool no_cache = false;
  unsigned jobs = 1;
  bool verbose = false;
};

std::uint64_t effective_budget(const Global& g) {
  if (g.aut_budget) return *g.aut_budget;
  if (const char* env = std::getenv(kBudgetEnv)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string(kBudgetEnv) + " is not a non-negative integer");
  }
  return kDefaultAutBudget;
}

std::optional<fs::path> default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "quasienum";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "quasienum";
  return std::nullopt;
}

std::unique_ptr<ReportCache> make_cache(const Global& g) {
  if (g.no_cache) return std::make_unique<ReportCache>();
  const auto dir = g.cache_dir.empty() ? default_cache_dir() : std::optional<fs::path>(g.cache_dir);
  if (!dir) return std::make_unique<ReportCache>();
  try {
    return std::make_unique<ReportCache>(*dir);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "warning: cache disabled (" << e.what() << ")\n";
    return std::make_unique<ReportCache>();
  }
}

EnumerationOptions make_options(const Global& g, ReportCache* cache) {
  EnumerationOptions o;
  o.aut_budget = effective_budget(g);
  o.jobs = std::max(1u, g.jobs);
  o.cache = cache;
  if (g.verbose) o.progress = [](const std::string& msg) { std::cerr << msg << '\n'; };
  return o;
}

std::string render(const std::vector<TableRow>& rows, const std::string& format) {
  if (format == "csv") return to_csv(rows);
  if (format == "json") return to_json(rows).dump(2) + "\n";
  return to_text(rows);
}

void add_format(CLI::App* cmd, std::string& format, const std::string& fallback) {
  format = fallback;
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
}

int cmd_count(const Global& global, const std::optional<std::uint64_t>& order,
              const std::string& group, const std::string& format) {
  auto cache = make_cache(global);
  const auto options = make_options(global, cache.get());
  std::vector<TableRow> rows;
  int code = kOk;
  if (order) {
    const auto r = cq_mq_of_order(*order, options);
    rows = order_rows(r);
    for (const auto& gr : r.per_group)
      if (!gr.report) {
        std::cerr << gr.group.descriptor() << ": " << gr.unavailable_reason << '\n';
        code = kResource;
      }
  } else {
    rows.push_back(group_row(report_for(parse_group(group), options)));
  }
  annotate_gap_ids(rows);
  std::cout << render(rows, format);
  return code;
}

int cmd_table(const Global& global, std::uint64_t max, const std::string& format,
              const std::string& out_path) {
  auto cache = make_cache(global);
  const auto options = make_options(global, cache.get());
  std::vector<TableRow> rows;
  for (std::uint64_t n = 1; n <= max; ++n) {
    const auto r = cq_mq_of_order(n, options);
    for (const auto& gr : r.per_group)
      if (!gr.report && global.verbose) std::cerr << gr.group.descriptor() << ": " << gr.unavailable_reason << '\n';
    auto part = order_rows(r);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  annotate_gap_ids(rows);
  const auto text = render(rows, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!(out << text)) throw std::runtime_error("cannot write " + out_path);
  }
  return kOk;
}

int cmd_reps(const Global& global, const std::string& group, const std::string& format,
             const std::string& tables_dir) {
  const auto g = parse_group(group);
  EnumerationOptions options = make_options(global, nullptr);
  const auto reps = classify_representatives(g, options);
  if (!tables_dir.empty()) fs::create_directories(tables_dir);
  std::size_t medial = 0;
  auto json = nlohmann::json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    medial += r.medial;
    const auto phi = to_json(r.phi), psi = to_json(r.psi);
    const nlohmann::json c = r.c.coords;
    text << i + 1 << " phi=" << phi.dump() << " psi=" << psi.dump() << " c=" << c.dump()
         << " medial=" << (r.medial ? "yes" : "no") << '\n';
    json.push_back({{"phi", phi}, {"psi", psi}, {"c", c}, {"medial", r.medial}});
    if (!tables_dir.empty()) {
      std::ostringstream name;
      name << "rep_" << std::setw(6) << std::setfill('0') << i + 1 << ".txt";
      std::ofstream out(fs::path(tables_dir) / name.str());
      write_table(out, build_quasigroup(AffineTriple(r.phi, r.psi, r.c)));
      if (!out) throw std::runtime_error("cannot write tables to " + tables_dir);
    }
  }
  if (format == "json") {
    std::cout << nlohmann::json{{"descriptor", g.descriptor()},
                                {"count", reps.size()},
                                {"medial", medial},
                                {"representatives", json}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "# " << g.descriptor() << ": " << reps.size() << " representatives, " << medial
              << " medial\n"
              << text.str();
  }
  return kOk;
}

int cmd_verify(const Global& global, std::uint64_t max, bool direct, const std::string& fixture_path) {
  std::vector<FixtureRow> fixture;
  if (fixture_path.empty()) {
    fixture = fixture_rows();
  } else {
    std::ifstream in(fixture_path);
    if (!in) throw std::invalid_argument("cannot read fixture " + fixture_path);
    std::stringstream buf;
    buf << in.rdbuf();
    fixture = parse_csv(buf.str());
  }
  for (const auto& row : fixture)
    if (auto problem = check_fixture_row(row)) throw std::invalid_argument("fixture: " + *problem);
  auto cache = make_cache(global);
  const auto options = make_options(global, cache.get());
  const auto s = verify_fixture(fixture, max, options, direct);
  for (const auto& m : s.mismatches) std::cout << "MISMATCH " << m << '\n';
  for (const auto& n : s.notes) std::cout << "note: " << n << '\n';
  std::cout << "matched " << s.matched << ", mismatched " << s.mismatched << ", unknown skipped "
            << s.unknown_skipped << ", unavailable " << s.unavailable << '\n';
  return s.ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts central and medial quasigroups over finite abelian groups."};
  app.require_subcommand(1);
  Global global;
  app.add_option("--aut-budget", global.aut_budget,
                 std::string("Largest |Aut(G)| to enumerate (env ") + kBudgetEnv + ")");
  app.add_option("--cache-dir", global.cache_dir, "Directory for cached group reports");
  app.add_flag("--no-cache", global.no_cache, "Do not read or write the on-disk cache");
  app.add_option("--jobs", global.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", global.verbose, "Progress messages on stderr");

  auto* count = app.add_subcommand("count", "Report for one group or one order");
  std::optional<std::uint64_t> count_order;
  std::string count_group, count_format;
  auto* order_opt = count->add_option("--order", count_order, "Group order")->check(CLI::PositiveNumber);
  auto* group_opt = count->add_option("--group", count_group, "Group descriptor, e.g. C4xC2");
  order_opt->excludes(group_opt);
  add_format(count, count_format, "table");

  auto* table = app.add_subcommand("table", "Per-group and per-order table up to an order");
  std::uint64_t table_max = 1;
  std::string table_format, table_out;
  table->add_option("--max", table_max, "Largest order")->required()->check(CLI::PositiveNumber);
  table->add_option("--out", table_out, "Output file (default stdout)");
  add_format(table, table_format, "csv");

  auto* reps = app.add_subcommand("reps", "One central quasigroup per isomorphism class");
  std::string reps_group, reps_format = "text", reps_tables;
  reps->add_option("--group", reps_group, "Group descriptor")->required();
  reps->add_option("--format", reps_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  reps->add_option("--emit-tables", reps_tables, "Write each Cayley table to this directory");

  auto* verify = app.add_subcommand("verify", "Recompute the shipped reference table");
  std::uint64_t verify_max = 32;
  bool verify_direct = false;
  std::string verify_fixture_path;
  verify->add_option("--max", verify_max, "Largest order to check")->capture_default_str();
  verify->add_flag("--direct", verify_direct, "Enumerate every group directly");
  verify->add_option("--fixture", verify_fixture_path, "Alternative fixture CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*count && !count_order && count_group.empty()) {
    std::cerr << "count: one of --order or --group is required\n";
    return kUsage;
  }

  try {
    if (*count) return cmd_count(global, count_order, count_group, count_format);
    if (*table) return cmd_table(global, table_max, table_format, table_out);
    if (*reps) return cmd_reps(global, reps_group, reps_format, reps_tables);
    if (*verify) return cmd_verify(global, verify_max, verify_direct, verify_fixture_path);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
