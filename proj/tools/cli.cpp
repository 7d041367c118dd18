#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <sstream>

#include "rookwalk/asym.hpp"
#include "rookwalk/error.hpp"
#include "rookwalk/guess.hpp"
#include "rookwalk/io.hpp"
#include "rookwalk/repro.hpp"
#include "rookwalk/rook_engine.hpp"
#include "rookwalk/walks.hpp"

namespace rookwalk::cli {

namespace {

struct JobConfig {
  std::string model = "rook";
  int dim = 0;
  long count = 0;
  int nmax = 40, mmax = 40;
  int max_order = 8;
  int max_degree = -1;  // subcommand default
  long margin = -1;     // subcommand default
  std::string engine;   // empty: per model
  std::string rec, input, out;
  long to = -1;
  int order = 10;
  long n = -1;
  int dmax = 0;
  int precision = 256;
  unsigned workers = 1;
};

[[noreturn]] void fail(const std::string& kind, const std::string& msg) { throw Error(kind, msg); }

void need(const CLI::App* app, const char* flag) {
  if (app->count(flag) == 0) fail("missing-flag", std::string(flag) + " is required for " + app->get_name());
}

void check_input(const std::string& path, const char* flag) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    fail("io", std::string(flag) + ": cannot read '" + path + "'");
}

void check_output(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  auto parent = std::filesystem::path(path).parent_path();
  if (parent.empty()) parent = ".";
  if (!std::filesystem::is_directory(parent, ec)) fail("io", "--out: directory of '" + path + "' does not exist");
  if (std::filesystem::is_directory(path, ec)) fail("io", "--out: '" + path + "' is a directory");
}

std::istringstream open_text(const std::string& path) { return std::istringstream(io::read_text_file(path)); }

// The primary output goes to --out when given, else to stdout.
void emit(const JobConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty())
    out << text;
  else
    io::write_text_file(c.out, text);
}

void check_dim(int dim, int lo = 1) {
  if (dim < lo) fail("invalid-argument", "--dim must be at least " + std::to_string(lo));
}

void check_workers(const JobConfig& c) {
  if (c.workers < 1) fail("invalid-argument", "--workers must be positive");
}

bool is_bivariate_file(const std::string& text) { return text.find("\nvars:") != std::string::npos; }

std::string resolve_engine(const JobConfig& c) {
  if (c.model != "rook" && c.model != "queen") fail("invalid-argument", "--model must be rook or queen");
  std::string e = c.engine.empty() ? (c.model == "rook" ? "fast" : "naive") : c.engine;
  if (e != "naive" && e != "fast" && e != "bivariate") fail("invalid-argument", "--engine must be naive, fast or bivariate");
  if (e != "naive" && c.model != "rook") fail("inconsistent-config", "--engine " + e + " requires --model rook");
  return e;
}

guess::Sequence compute_terms(const JobConfig& c, const std::string& engine) {
  const int last = static_cast<int>(c.count - 1);
  if (engine == "fast") return {0, engine::diagonal_terms(c.dim, last, c.workers).terms};
  if (engine == "naive") {
    const auto model = walks::WalkModel::by_name(c.model, c.dim);
    return {0, walks::naive_box(model, walks::Point(static_cast<std::size_t>(c.dim), last)).diagonal()};
  }
  check_dim(c.dim, 2);
  const auto table = engine::slice_table(c.dim, c.nmax, c.mmax, c.workers);
  const auto plan = guess::guess_slice_recurrences(table, c.max_order, c.max_degree < 0 ? 12 : c.max_degree,
                                                   c.margin < 0 ? 4 : static_cast<std::size_t>(c.margin),
                                                   {c.workers});
  if (plan.n_order == 0 || plan.m_order == 0)
    fail("none-found", "no bivariate recurrences for the " + std::to_string(c.nmax) + "x" + std::to_string(c.mmax) +
                           " slice table; raise --nmax/--mmax or --max-degree");
  return guess::diagonal_via_bivariate(plan.recs, table, last);
}

void write_report(std::ostream& os, const guess::GuessReport& r) {
  os << "ansatz-order: " << r.order << '\n';
  os << "ansatz-degree: " << r.degree << '\n';
  os << "unknowns: " << r.unknowns << '\n';
  os << "fit-equations: " << r.equations_used << '\n';
  os << "held-out: " << r.margin << " (n = " << r.held_out_from << " .. " << r.held_out_to << ")\n";
  os << "kernel-dimension: " << r.kernel_dimension << '\n';
  os << "ansatzes-tried: " << r.tried.size() << '\n';
}

std::string stats_line(const guess::Recurrence& rec) {
  const auto s = guess::recurrence_stats(rec);
  return "order: " + std::to_string(s.order) + "  degree: " + std::to_string(s.degree) +
         "  maxint: " + std::to_string(s.maxint_digits) + " dd\n";
}

// --- subcommands -----------------------------------------------------------

void cmd_terms(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--dim");
  need(app, "--count");
  check_dim(c.dim);
  if (c.count < 1) fail("invalid-argument", "--count must be positive");
  check_output(c.out);
  const auto engine = resolve_engine(c);
  std::ostringstream os;
  io::write_bfile(os, compute_terms(c, engine));
  emit(c, out, os.str());
}

void cmd_slice(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--dim");
  check_dim(c.dim, 2);
  if (c.model != "rook") fail("inconsistent-config", "--model: slice tables exist for rook only");
  if (c.nmax < 0 || c.mmax < 0) fail("invalid-argument", "--nmax and --mmax must be nonnegative");
  check_output(c.out);
  std::ostringstream os;
  engine::write_tsv(os, engine::slice_table(c.dim, c.nmax, c.mmax, c.workers));
  emit(c, out, os.str());
}

void cmd_guess(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--input");
  check_input(c.input, "--input");
  check_output(c.out);
  auto is = open_text(c.input);
  const auto seq = io::read_bfile(is);
  const long margin = c.margin < 0 ? static_cast<long>(guess::kDefaultMargin) : c.margin;
  if (margin < 1) fail("invalid-argument", "--margin must be positive");
  const auto report = guess::guess_univariate(seq, c.max_order, c.max_degree < 0 ? 40 : c.max_degree,
                                              static_cast<std::size_t>(margin), {c.workers});
  if (!report.found)
    fail("none-found", "no recurrence with order <= " + std::to_string(c.max_order) + " and degree <= " +
                           std::to_string(c.max_degree < 0 ? 40 : c.max_degree));
  std::ostringstream os;
  io::write_recurrence(os, *report.found);
  emit(c, out, os.str());
  if (!c.out.empty()) {
    write_report(out, report);
    out << stats_line(*report.found);
  }
}

void cmd_guess2d(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  check_output(c.out);
  engine::SliceTable table;
  if (app->count("--input")) {
    check_input(c.input, "--input");
    auto is = open_text(c.input);
    table = io::read_slice_tsv(is);
  } else {
    need(app, "--dim");
    check_dim(c.dim, 2);
    table = engine::slice_table(c.dim, c.nmax, c.mmax, c.workers);
  }
  const int degree = c.max_degree < 0 ? 12 : c.max_degree;
  const auto plan = guess::guess_slice_recurrences(table, c.max_order, degree,
                                                   c.margin < 0 ? 4 : static_cast<std::size_t>(c.margin), {c.workers});
  if (plan.n_order == 0 || plan.m_order == 0)
    fail("none-found", "no pair of bivariate recurrences with order <= " + std::to_string(c.max_order) +
                           " and degree <= " + std::to_string(degree));
  std::ostringstream os;
  io::write_bivariate(os, plan.recs);
  emit(c, out, os.str());
  if (!c.out.empty()) {
    out << "n-recurrence: order " << plan.n_order << " width " << plan.n_width << " degree " << plan.n_degree << '\n';
    out << "m-recurrence: order " << plan.m_order << " degree " << plan.m_degree << '\n';
    out << "table: " << table.max_n + 1 << "x" << table.max_m + 1 << '\n';
  }
}

void cmd_check(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--rec");
  need(app, "--input");
  check_input(c.rec, "--rec");
  check_input(c.input, "--input");
  auto rs = open_text(c.rec);
  auto bs = open_text(c.input);
  const auto rec = io::read_recurrence(rs);
  const auto seq = io::read_bfile(bs);
  if (auto bad = guess::check_recurrence(rec, seq)) {
    out << "violated-at: " << *bad << '\n';
    fail("violated", "recurrence fails at n = " + std::to_string(*bad));
  }
  out << "holds\n";
}

void cmd_extend(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--rec");
  need(app, "--input");
  need(app, "--to");
  check_input(c.rec, "--rec");
  check_input(c.input, "--input");
  check_output(c.out);
  if (c.to < 0) fail("invalid-argument", "--to must be nonnegative");
  const std::string text = io::read_text_file(c.rec);
  std::istringstream rs(text);
  auto is = open_text(c.input);
  std::ostringstream os;
  if (is_bivariate_file(text)) {
    const auto recs = io::read_bivariate(rs);
    io::write_bfile(os, guess::diagonal_via_bivariate(recs, io::read_slice_tsv(is), c.to));
  } else {
    const auto rec = io::read_recurrence(rs);
    io::write_bfile(os, guess::extend_with_recurrence(rec, io::read_bfile(is), c.to));
  }
  emit(c, out, os.str());
}

void cmd_stats(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--rec");
  check_input(c.rec, "--rec");
  auto rs = open_text(c.rec);
  out << stats_line(io::read_recurrence(rs));
}

void cmd_asym(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--rec");
  check_input(c.rec, "--rec");
  if (app->count("--input")) check_input(c.input, "--input");
  if (app->count("--dim")) check_dim(c.dim);
  if (app->count("--n") && !app->count("--input")) fail("inconsistent-config", "--n needs --input");
  check_output(c.out);
  auto rs = open_text(c.rec);
  const auto rec = io::read_recurrence(rs);
  const auto e = asym::birkhoff_expand(rec, c.order);
  std::ostringstream os;
  asym::write_expansion(os, e);
  std::optional<guess::Sequence> terms;
  if (app->count("--input")) {
    auto is = open_text(c.input);
    terms = io::read_bfile(is);
  }
  if (app->count("--dim")) {
    const auto k = asym::leading_constant(c.dim);
    os << "constant: " << k.describe() << '\n';
    os << "constant-source: closed form\n";
    if (terms) {
      const long n = c.n < 0 ? terms->last() : c.n;
      const auto r = asym::ratio_check(*terms, e, k, n, c.precision);
      os << "ratio-n: " << n << '\n';
      os << "ratio-lo: " << r.lo << '\n';
      os << "ratio-hi: " << r.hi << '\n';
      os << "ratio-deviation: " << r.deviation << '\n';
      os << "ratio-precision: " << r.precision_bits << " bits, " << r.rounding << '\n';
    }
  } else if (terms) {
    const long n_to = c.n < 0 ? terms->last() : c.n;
    const long n_from = std::max(1L, n_to - 9);
    os << "constant: " << asym::fit_constant(*terms, e, n_from, n_to, c.precision) << '\n';
    os << "constant-source: numeric fit over n = " << n_from << " .. " << n_to << '\n';
  }
  emit(c, out, os.str());
}

void cmd_alpha(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--dim");
  check_dim(c.dim);
  out << "alpha: " << to_string(asym::leading_constant(c.dim).alpha) << '\n';
}

void cmd_fixedn(const CLI::App* app, const JobConfig& c, std::ostream& out) {
  need(app, "--n");
  need(app, "--dmax");
  if (c.n < 0) fail("invalid-argument", "--n must be nonnegative");
  if (c.dmax < 1) fail("invalid-argument", "--dmax must be positive");
  check_output(c.out);
  const auto series = engine::fixed_n_counts(static_cast<int>(c.n), c.dmax, c.workers);
  std::ostringstream os;
  io::write_bfile(os, guess::Sequence{1, series.terms});
  emit(c, out, os.str());
}

void cmd_repro(const CLI::App*, const JobConfig& c, std::ostream& out) {
  check_output(c.out);
  const int dmax = c.dmax < 1 ? repro::kDefaultDmaxBudget : c.dmax;
  const auto rows = repro::repro_table(dmax, c.workers);
  std::ostringstream os;
  repro::write_repro_tsv(os, rows);
  emit(c, out, os.str());
  std::string bad;
  for (const auto& r : rows) {
    const std::string s = r.status();
    if (s == "mismatch" || s == "none-found") bad += (bad.empty() ? "d=" : ", d=") + std::to_string(r.got.dim);
  }
  if (!bad.empty()) fail("mismatch", "rows differ from the expected table: " + bad);
}

using Handler = void (*)(const CLI::App*, const JobConfig&, std::ostream&);

struct Command {
  const char* name;
  const char* help;
  Handler run;
  std::vector<const char*> flags;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"terms", "diagonal terms a(n, ..., n) as a b-file", cmd_terms,
       {"--model", "--dim", "--count", "--engine", "--nmax", "--mmax", "--max-order", "--max-degree", "--margin",
        "--out", "--workers"}},
      {"slice", "slice table b(n, m) = a(n, ..., n, m) as TSV", cmd_slice,
       {"--model", "--dim", "--nmax", "--mmax", "--out", "--workers"}},
      {"guess", "guess a recurrence for a b-file", cmd_guess,
       {"--input", "--max-order", "--max-degree", "--margin", "--out", "--workers"}},
      {"guess2d", "guess bivariate recurrences for a slice table", cmd_guess2d,
       {"--input", "--dim", "--nmax", "--mmax", "--max-order", "--max-degree", "--margin", "--out", "--workers"}},
      {"check", "check a recurrence against a b-file", cmd_check, {"--rec", "--input"}},
      {"extend", "extend a b-file (or a slice table's diagonal) with a recurrence", cmd_extend,
       {"--rec", "--input", "--to", "--out"}},
      {"stats", "order, degree and maxint of a recurrence", cmd_stats, {"--rec"}},
      {"asym", "asymptotic expansion of a recurrence", cmd_asym,
       {"--rec", "--order", "--input", "--n", "--dim", "--precision", "--out"}},
      {"alpha", "the constant alpha_d", cmd_alpha, {"--dim"}},
      {"fixedn", "w_n(d) for d = 1 .. dmax as a b-file", cmd_fixedn, {"--n", "--dmax", "--out", "--workers"}},
      {"repro-table", "order / degree / maxint rows against the expected table", cmd_repro,
       {"--dmax", "--out", "--workers"}},
  };
  return list;
}

void add_flag(CLI::App* sub, const std::string& flag, JobConfig& c) {
  if (flag == "--model") sub->add_option("--model", c.model, "rook or queen");
  else if (flag == "--dim") sub->add_option("--dim", c.dim, "dimension d");
  else if (flag == "--count") sub->add_option("--count", c.count, "number of terms");
  else if (flag == "--nmax") sub->add_option("--nmax", c.nmax, "largest n of the slice table");
  else if (flag == "--mmax") sub->add_option("--mmax", c.mmax, "largest m of the slice table");
  else if (flag == "--max-order") sub->add_option("--max-order", c.max_order, "largest recurrence order");
  else if (flag == "--max-degree") sub->add_option("--max-degree", c.max_degree, "largest coefficient degree");
  else if (flag == "--margin") sub->add_option("--margin", c.margin, "held-out equations (rows for guess2d)");
  else if (flag == "--engine") sub->add_option("--engine", c.engine, "naive, fast or bivariate");
  else if (flag == "--rec") sub->add_option("--rec", c.rec, "recurrence file");
  else if (flag == "--input") sub->add_option("--input", c.input, "input b-file or TSV");
  else if (flag == "--out") sub->add_option("--out", c.out, "output file (default: stdout)");
  else if (flag == "--to") sub->add_option("--to", c.to, "last index");
  else if (flag == "--order") sub->add_option("--order", c.order, "expansion order K");
  else if (flag == "--n") sub->add_option("--n", c.n, "index n");
  else if (flag == "--dmax") sub->add_option("--dmax", c.dmax, "largest dimension");
  else if (flag == "--precision") sub->add_option("--precision", c.precision, "MPFR precision in bits");
  else if (flag == "--workers") sub->add_option("--workers", c.workers, "worker threads");
}

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig c;
  CLI::App app{"Rook walk counting, recurrence guessing and asymptotics", "rookwalk"};
  app.require_subcommand(1);
  app.fallthrough(false);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const char* f : cmd.flags) add_flag(sub, f, c);
    subs.emplace_back(sub, cmd.run);
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return 1;
  }
  try {
    for (auto& [sub, handler] : subs) {
      if (!sub->parsed()) continue;
      check_workers(c);
      handler(sub, c, out);
    }
  } catch (const Error& e) {
    out.flush();
    err << "error: " << e.kind() << ": " << one_line(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    out.flush();
    err << "error: internal: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rookwalk::cli
