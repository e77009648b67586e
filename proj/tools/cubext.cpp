// cubext: enumerate cubic extensions of imaginary quadratic fields of class number one.
//
// Exit status: 0 success, 1 configuration error or table mismatch, 2 precision cap exhausted,
// 3 unsupported field.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cubext/automorphisms.hpp"
#include "cubext/enumerator.hpp"
#include "cubext/exact_compare.hpp"
#include "cubext/predict.hpp"

namespace {

using namespace cubext;

constexpr int kExitConfig = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitUnsupported = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int d_K = -4;
  std::int64_t bound = 0;
  std::string format = "jsonl";
  std::string output = "-";
  int jobs = 1;
  bool count_only = false;
  bool pair_conjugates = false;
  unsigned precision_cap = 0;
  bool allow_uncertified = false;
};

// The flag wins, then CUBEX_PRECISION_CAP, then the bound-dependent default (0 here).
unsigned resolve_cap(unsigned flag) {
  if (flag) return flag;
  const char* env = std::getenv("CUBEX_PRECISION_CAP");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(env, &used);
    if (used != std::string(env).size() || v < 64) throw std::invalid_argument("range");
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw ConfigError(std::string("CUBEX_PRECISION_CAP must be an integer >= 64, got '") + env + "'");
  }
}

void validate(const RunConfig& c) {
  if (c.bound < 1) throw ConfigError("--bound must be >= 1");
  if (c.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (c.precision_cap && c.precision_cap < 64) throw ConfigError("--precision-cap must be >= 64");
  parse_record_format(c.format);
}

EnumerateOptions options_of(const RunConfig& c) {
  EnumerateOptions o;
  o.pair_conjugates = c.pair_conjugates;
  o.allow_uncertified_domain = c.allow_uncertified;
  o.precision_cap = resolve_cap(c.precision_cap);
  return o;
}

void print_stats(std::ostream& os, const RunStats& st) {
  os << "X = " << st.X << "\n"
     << "candidates iterated: " << st.candidates_iterated << "\n"
     << "julia-reduced: " << st.kept_reduced << "\n"
     << "irreducible: " << st.kept_irreducible << "\n"
     << "maximal: " << st.kept_maximal << "\n"
     << "emitted: " << st.emitted << "\n"
     << "wall time: " << std::fixed << std::setprecision(2) << st.wall_time.count() << " s\n"
     << "max precision: " << st.max_precision_used << " bits\n";
}

int cmd_enumerate(const RunConfig& c) {
  validate(c);
  const FieldParams& params = field_for(c.d_K);
  const EnumerateOptions opts = options_of(c);
  if (c.count_only) {
    CountingSink sink;
    const RunStats st = enumerate_parallel(params, c.bound, c.jobs, sink, opts);
    std::cout << "N(" << c.bound << ") = " << sink.count() << "\n";
    print_stats(std::cerr, st);
    return 0;
  }
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;
  if (c.output != "-") {
    file = std::make_unique<std::ofstream>(c.output);
    if (!*file) throw ConfigError("cannot open output file '" + c.output + "'");
    os = file.get();
  }
  StreamSink sink(*os, parse_record_format(c.format));
  const RunStats st = enumerate_parallel(params, c.bound, c.jobs, sink, opts);
  print_stats(std::cerr, st);
  return 0;
}

// Rows of "X N" with '#' comments.
std::vector<std::pair<std::int64_t, std::uint64_t>> read_count_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  std::vector<std::pair<std::int64_t, std::uint64_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::int64_t X = 0;
    std::uint64_t n = 0;
    if (!(ls >> X >> n)) throw ConfigError("bad table line '" + line + "'");
    rows.emplace_back(X, n);
  }
  return rows;
}

int cmd_check_table(int d_K, bool extended, const std::string& table, int jobs, unsigned cap_flag) {
  if (d_K != -4) throw ConfigError("check-table only covers d_K = -4");
  if (jobs < 1) throw ConfigError("--jobs must be >= 1");
  std::vector<std::pair<std::int64_t, std::uint64_t>> rows{{10000, 276}, {40000, 1339}, {90000, 3305}};
  if (extended) rows.emplace_back(1000000, 42692);
  if (!table.empty()) {
    const auto all = read_count_table(table);
    rows.clear();
    for (const auto& r : all)
      if (extended || r.first < 1000000) rows.push_back(r);
  }
  EnumerateOptions opts;
  opts.precision_cap = resolve_cap(cap_flag);
  bool ok = true;
  for (const auto& [X, expected] : rows) {
    CountingSink sink;
    const RunStats st = enumerate_parallel(field_for(d_K), X, jobs, sink, opts);
    const bool pass = sink.count() == expected;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  N(" << X << ") = " << sink.count() << "  expected " << expected;
    if (!pass) std::cout << "  diff " << static_cast<std::int64_t>(sink.count()) - static_cast<std::int64_t>(expected);
    std::cout << "  (" << std::fixed << std::setprecision(1) << st.wall_time.count() << " s)\n";
  }
  return ok ? 0 : kExitConfig;
}

int cmd_predict(int d_K, double X) {
  if (X <= 0) throw ConfigError("--bound must be positive");
  field_for(d_K);
  const Prediction p = predict_count(d_K, X);
  std::cout << std::setprecision(10) << "main term: " << p.main_term << "\n"
            << "secondary term: " << p.secondary_term << "\n"
            << "prediction: " << std::fixed << std::setprecision(1) << p.total() << "\n";
  return 0;
}

int cmd_automorphs(int d_K, const std::string& region_name, const std::string& output, const std::string& compare) {
  const FieldParams& params = field_for(d_K);
  const AutRegion region = parse_region(region_name);
  const auto table = enumerate_automorphs(params, region);
  if (!compare.empty()) {
    std::ifstream in(compare);
    if (!in) throw ConfigError("cannot open table '" + compare + "'");
    const AutTableFile expected = read_table(in);
    if (expected.d_K != d_K) throw ConfigError("table is for a different field");
    const TableDiff d = diff_tables(Order(params), expected.entries, table);
    const Order o(params);
    for (const auto& m : d.missing) std::cout << "missing " << to_string(o, m) << "\n";
    for (const auto& m : d.extra) std::cout << "extra " << to_string(o, m) << "\n";
    for (const auto& m : d.wrong_conditions) std::cout << "conditions differ " << to_string(o, m) << "\n";
    std::cout << (d.empty() ? "tables agree" : "tables differ") << " (" << table.size() << " computed, "
              << expected.entries.size() << " expected)\n";
    return d.empty() ? 0 : kExitConfig;
  }
  if (output == "-") {
    write_table(std::cout, params, region, table);
  } else {
    std::ofstream out(output);
    if (!out) throw ConfigError("cannot open output file '" + output + "'");
    write_table(out, params, region, table);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate cubic extensions of imaginary quadratic fields of class number one"};
  app.require_subcommand(1);

  RunConfig rc;
  auto* en = app.add_subcommand("enumerate", "List one cubic form per extension with norm of discriminant <= X");
  en->add_option("--dk", rc.d_K, "Field discriminant")->capture_default_str();
  en->add_option("--bound,-X", rc.bound, "Bound X on the norm of the relative discriminant")->required();
  en->add_option("--format", rc.format, "Record format")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
  en->add_option("--output,-o", rc.output, "Output path, - for stdout")->capture_default_str();
  en->add_option("--jobs,-j", rc.jobs, "Worker threads")->capture_default_str();
  en->add_flag("--count-only", rc.count_only, "Print only N(X)");
  en->add_flag("--pair-conjugates", rc.pair_conjugates, "Derive mirror-image forms instead of testing them");
  en->add_option("--precision-cap", rc.precision_cap, "Maximum working precision in bits");
  en->add_flag("--allow-uncertified", rc.allow_uncertified, "Run fields whose domain tie-breaks are not certified");

  int ct_dk = -4, ct_jobs = 1;
  unsigned ct_cap = 0;
  bool ct_ext = false;
  std::string ct_table;
  auto* ct = app.add_subcommand("check-table", "Compare counts against the published table for Q(i)");
  ct->add_option("--dk", ct_dk, "Field discriminant")->capture_default_str();
  ct->add_flag("--extended", ct_ext, "Include X = 10^6");
  ct->add_option("--table", ct_table, "Table file of 'X N' rows replacing the built-in one");
  ct->add_option("--jobs,-j", ct_jobs, "Worker threads")->capture_default_str();
  ct->add_option("--precision-cap", ct_cap, "Maximum working precision in bits");

  int pr_dk = -4;
  double pr_X = 0;
  auto* pr = app.add_subcommand("predict", "Evaluate the two-term asymptotic count");
  pr->add_option("--dk", pr_dk, "Field discriminant")->capture_default_str();
  pr->add_option("--bound,-X", pr_X, "Bound X")->required();

  int au_dk = -4;
  std::string au_region = "reduced_closure", au_out = "-", au_cmp;
  auto* au = app.add_subcommand("automorphs", "Print the automorphism matrix table");
  au->add_option("--dk", au_dk, "Field discriminant")->capture_default_str();
  au->add_option("--region", au_region, "reduced_closure or lemma_box")
      ->check(CLI::IsMember({"reduced_closure", "lemma_box"}))
      ->capture_default_str();
  au->add_option("--output,-o", au_out, "Output path, - for stdout")->capture_default_str();
  au->add_option("--compare", au_cmp, "Diff against a table file instead of printing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*en) return cmd_enumerate(rc);
    if (*ct) return cmd_check_table(ct_dk, ct_ext, ct_table, ct_jobs, ct_cap);
    if (*pr) return cmd_predict(pr_dk, pr_X);
    if (*au) return cmd_automorphs(au_dk, au_region, au_out, au_cmp);
  } catch (const UnsupportedField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const UnsupportedDomain& e) {
    std::cerr << "error: " << e.what() << " (pass --allow-uncertified to run anyway)\n";
    return kExitUnsupported;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
