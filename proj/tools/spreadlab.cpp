// spreadlab: command-line front end.
//
// Exit codes: 0 success or verified, 1 a violation was found, 2 usage error
// or parameters outside the supported regime.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadlab/bounds.hpp"
#include "spreadlab/construct.hpp"
#include "spreadlab/error.hpp"
#include "spreadlab/io.hpp"
#include "spreadlab/partition.hpp"
#include "spreadlab/search.hpp"

namespace {

using namespace spreadlab;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t q = 2;
  unsigned n = 0;
  unsigned t = 0;
  std::string format = "json";
  std::string out;
};

void add_params(CLI::App* cmd, Common& c, bool required = true) {
  auto* q = cmd->add_option("--q", c.q, "field order (prime power)");
  auto* n = cmd->add_option("--n", c.n, "ambient dimension");
  auto* t = cmd->add_option("--t", c.t, "subspace dimension");
  if (required) {
    q->required();
    n->required();
    t->required();
  }
}

void add_output(CLI::App* cmd, Common& c, std::vector<std::string> formats = {"json", "text"}) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
  cmd->add_option("--out", c.out, "output file ('-' for stdout)");
}

std::string opt_str(const std::optional<BigInt>& v) { return v ? v->str() : std::string(); }

std::optional<BigInt> try_value(auto&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// bounds / table

struct Row {
  bounds::BoundReport report;
  std::optional<BigInt> df;
  std::optional<BigInt> main;
};

Row row_for(const bounds::SpreadParams& p) {
  return Row{bounds::best_known(p), try_value([&] { return bounds::drake_freeman(p); }),
             try_value([&] { return bounds::main_bound(p); })};
}

std::string row_source(const bounds::BoundReport& r) {
  if (r.exact) return std::string(bounds::source_tag(r.exact->source));
  for (const auto& u : r.uppers)
    if (u.value == r.best_upper) return std::string(bounds::source_tag(u.source));
  return {};
}

std::string csv_row(const Row& row) {
  const auto& r = row.report;
  std::ostringstream s;
  s << r.params.q << ',' << r.params.n << ',' << r.params.t << ',' << r.lower << ',' << opt_str(row.df) << ','
    << opt_str(row.main) << ',' << (r.exact ? r.exact->value.str() : "") << ',' << row_source(r);
  return s.str();
}

constexpr const char* kCsvHeader = "q,n,t,lower,df,main,exact,source";

std::string text_row(const Row& row) {
  const auto& r = row.report;
  std::ostringstream s;
  s << "q=" << r.params.q << " n=" << r.params.n << " t=" << r.params.t << ": ";
  if (r.exact)
    s << "mu = " << r.exact->value << " (" << bounds::source_tag(r.exact->source) << ")";
  else
    s << r.lower << " <= mu <= " << r.best_upper << " (" << row_source(r) << ")";
  return s.str();
}

json json_row(const Row& row) {
  auto j = io::report_to_json(row.report);
  j["best_upper"] = io::big_to_json(row.report.best_upper);
  return j;
}

int cmd_bounds(const Common& c) {
  const auto row = row_for(bounds::SpreadParams::make(c.q, c.n, c.t));
  if (c.format == "csv")
    io::write_text(c.out, std::string(kCsvHeader) + "\n" + csv_row(row));
  else if (c.format == "text")
    io::write_text(c.out, text_row(row));
  else
    io::write_text(c.out, json_row(row).dump(2));
  return kOk;
}

std::vector<unsigned> parse_range(const std::string& text, const char* flag) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
      throw UsageError(std::string("malformed value in ") + flag + ": '" + text + "'");
    return static_cast<unsigned>(std::stoul(s));
  };
  std::vector<unsigned> out;
  std::stringstream parts(text);
  std::string item;
  while (std::getline(parts, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
      continue;
    }
    const unsigned lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
    if (lo > hi || hi - lo > 10000) throw UsageError(std::string("empty or huge range in ") + flag + ": '" + text + "'");
    for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty range in ") + flag);
  return out;
}

struct TableArgs {
  std::string q = "2", n, t;
};

int cmd_table(const Common& c, const TableArgs& a) {
  const auto qs = parse_range(a.q, "--q"), ns = parse_range(a.n, "--n"), ts = parse_range(a.t, "--t");
  std::vector<Row> rows;
  for (auto q : qs)
    for (auto n : ns)
      for (auto t : ts)
        if (t >= 1 && n > t) rows.push_back(row_for(bounds::SpreadParams::make(q, n, t)));
  std::string text;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(json_row(r));
    text = arr.dump(2);
  } else {
    if (c.format == "csv") text = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) text += (c.format == "csv" ? csv_row(r) : text_row(r)) + "\n";
  }
  io::write_text(c.out, text);
  return kOk;
}

// ---------------------------------------------------------------------------
// construct / verify / analyze

std::string spread_text(const construct::PartialSpread& s) {
  std::ostringstream out;
  out << "partial spread q=" << s.params.q << " n=" << s.params.n << " t=" << s.params.t << " size=" << s.size()
      << "\n";
  for (const auto& m : s.members) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
      out << (r ? " | " : "");
      for (auto v : m.basis().row(r)) out << v << ' ';
    }
    out << "\n";
  }
  return out.str();
}

int cmd_construct(const Common& c, bool check) {
  auto s = construct::build_lower_bound_spread(bounds::SpreadParams::make(c.q, c.n, c.t));
  if (check && !construct::verify_partial_spread_serial(s).verified()) {
    std::cerr << "constructed spread failed the reference check\n";
    return kViolation;
  }
  io::write_text(c.out, c.format == "text" ? spread_text(s) : io::spread_to_json(s).dump());
  return kOk;
}

construct::PartialSpread load_spread(const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return io::spread_from_json(j);
}

int cmd_verify(const Common& c, const std::string& file) {
  auto s = load_spread(file);
  construct::verify_in_place(s, 1);
  if (c.format == "text") {
    io::write_text(c.out, s.verification.verified() ? "verified: " + std::to_string(s.size()) + " members"
                                                    : "failed: " + s.verification.reason);
  } else {
    auto j = io::verification_to_json(s.verification);
    j["size"] = s.size();
    io::write_text(c.out, j.dump(2));
  }
  return s.verification.verified() ? kOk : kViolation;
}

json type_json(const partition::TypeVector& type) {
  json j = json::object();
  for (const auto& [d, count] : type) j[std::to_string(d)] = count;
  return j;
}

int cmd_analyze(const Common& c, const std::string& file, bool with_hyperplanes) {
  auto s = load_spread(file);
  construct::verify_in_place(s, 1);
  if (!s.verification.verified()) {
    std::cerr << "not a partial spread: " << s.verification.reason << "\n";
    return kViolation;
  }
  const auto part = partition::partition_from_spread(s);
  const auto check = partition::verify_partition(part);
  json j{{"q", s.params.q},
         {"n", s.params.n},
         {"t", s.params.t},
         {"size", s.size()},
         {"type", type_json(part.type)},
         {"type_string", partition::type_string(part.type)},
         {"partition_ok", check.ok}};
  std::string text = "type " + partition::type_string(part.type) + (check.ok ? ", partition ok\n" : ", partition BROKEN\n");
  if (with_hyperplanes) {
    const auto prof = partition::hyperplane_profile(part, 1);
    json tally = json::array();
    for (const auto& [b, count] : prof.tally) tally.push_back({{"b", b}, {"count", count}});
    j["hyperplanes"] = {{"count", prof.hyperplane_count()}, {"dims", prof.dims}, {"tally", tally}, {"identities_hold", true}};
    text += std::to_string(prof.hyperplane_count()) + " hyperplanes, " + std::to_string(prof.tally.size()) +
            " types, identities hold\n";
    for (const auto& [b, count] : prof.tally) {
      text += "  b = (";
      for (std::size_t i = 0; i < b.size(); ++i) text += (i ? "," : "") + std::to_string(b[i]);
      text += "): " + std::to_string(count) + "\n";
    }
  }
  io::write_text(c.out, c.format == "text" ? text : j.dump(2));
  return check.ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// certify / search

int cmd_certify(const Common& c, const std::optional<std::string>& x, const std::optional<std::string>& check_file) {
  if (check_file) {
    json j;
    try {
      j = json::parse(io::read_text(*check_file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    const auto verdict = partition::check_certificate(j);
    if (c.format == "text")
      io::write_text(c.out, verdict.ok ? "certificate ok" : "certificate rejected at " + verdict.first_mismatch + ": " + verdict.detail);
    else
      io::write_text(c.out, json{{"ok", verdict.ok}, {"first_mismatch", verdict.ok ? json(nullptr) : json(verdict.first_mismatch)},
                                 {"detail", verdict.detail}}
                                .dump(2));
    return verdict.ok ? kOk : kViolation;
  }
  if (c.n == 0 || c.t == 0) throw UsageError("certify needs --q, --n and --t (or --check FILE)");
  std::optional<BigInt> xv;
  if (x) {
    try {
      xv = io::big_from_json(json(*x));
    } catch (const Error&) {
      throw UsageError("--x must be an integer");
    }
  }
  const auto cert = partition::descent_certificate(c.q, c.n, c.t, xv);
  io::write_text(c.out, partition::certificate_to_json(cert).dump(2));
  return kOk;
}

int cmd_search(const Common& c, const search::SearchOptions& opt, bool check) {
  const auto p = bounds::SpreadParams::make(c.q, c.n, c.t);
  const auto r = search::max_partial_spread(p, opt);
  if (check && !construct::verify_partial_spread_serial(r.witness).verified()) {
    std::cerr << "search witness failed the reference check\n";
    return kViolation;
  }
  if (c.format == "text") {
    std::ostringstream s;
    s << search::status_tag(r.status) << " " << r.best_size << " (nodes " << r.nodes_explored << ", " << r.wall_time
      << " s)";
    io::write_text(c.out, s.str());
  } else {
    json j{{"q", p.q},
           {"n", p.n},
           {"t", p.t},
           {"best_size", r.best_size},
           {"status", search::status_tag(r.status)},
           {"nodes_explored", r.nodes_explored},
           {"wall_time", r.wall_time},
           {"witness", io::spread_to_json(r.witness)}};
    io::write_text(c.out, j.dump(2));
  }
  return kOk;
}

bool is_usage(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConstructionSizeMismatch:
    case ErrorCode::UnverifiedSpread:
    case ErrorCode::IdentityViolation:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, constructions and certificates for partial spreads"};
  app.require_subcommand(1);

  Common bounds_c, table_c, construct_c, verify_c, analyze_c, certify_c, search_c;
  table_c.format = "csv";

  auto* bounds_cmd = app.add_subcommand("bounds", "best known bounds for mu_q(n,t)");
  add_params(bounds_cmd, bounds_c);
  add_output(bounds_cmd, bounds_c, {"json", "csv", "text"});

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "bounds over a parameter grid");
  table_cmd->add_option("--q", table_args.q, "field orders, e.g. 2 or 2,3");
  table_cmd->add_option("--n", table_args.n, "ambient dimensions, e.g. 4..12")->required();
  table_cmd->add_option("--t", table_args.t, "subspace dimensions, e.g. 2..4")->required();
  add_output(table_cmd, table_c, {"csv", "json", "text"});

  bool construct_check = false;
  auto* construct_cmd = app.add_subcommand("construct", "build the lower-bound partial spread");
  add_params(construct_cmd, construct_c);
  add_output(construct_cmd, construct_c);
  construct_cmd->add_flag("--check", construct_check, "re-verify with the pairwise reference check");

  std::string verify_file;
  auto* verify_cmd = app.add_subcommand("verify", "check that a spread file is a partial spread");
  verify_cmd->add_option("file", verify_file, "spread file or '-'")->required();
  add_output(verify_cmd, verify_c);

  std::string analyze_file;
  bool analyze_hyperplanes = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "partition type and hyperplane profile of a spread");
  analyze_cmd->add_option("file", analyze_file, "spread file or '-'")->required();
  analyze_cmd->add_flag("--hyperplanes", analyze_hyperplanes, "compute the hyperplane profile");
  add_output(analyze_cmd, analyze_c);

  std::optional<std::string> certify_x, certify_check;
  auto* certify_cmd = app.add_subcommand("certify", "emit or check a descent certificate");
  add_params(certify_cmd, certify_c, false);
  certify_cmd->add_option("--x", certify_x, "offset x (default: the main-theorem offset)");
  certify_cmd->add_option("--check", certify_check, "certificate file to check");
  add_output(certify_cmd, certify_c);

  search::SearchOptions search_opt;
  bool search_check = false;
  auto* search_cmd = app.add_subcommand("search", "exact branch-and-bound search");
  add_params(search_cmd, search_c);
  add_output(search_cmd, search_c);
  search_cmd->add_option("--budget", search_opt.node_budget, "node budget (0 = unlimited)");
  search_cmd->add_option("--time", search_opt.time_budget, "time budget in seconds (0 = unlimited)");
  search_cmd->add_option("--seed", search_opt.seed, "seed of the greedy warm start");
  search_cmd->add_option("--threads", search_opt.threads, "worker threads")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--check", search_check, "re-verify the witness with the pairwise reference check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bounds_cmd) return cmd_bounds(bounds_c);
    if (*table_cmd) return cmd_table(table_c, table_args);
    if (*construct_cmd) return cmd_construct(construct_c, construct_check);
    if (*verify_cmd) return cmd_verify(verify_c, verify_file);
    if (*analyze_cmd) return cmd_analyze(analyze_c, analyze_file, analyze_hyperplanes);
    if (*certify_cmd) return cmd_certify(certify_c, certify_x, certify_check);
    if (*search_cmd) return cmd_search(search_c, search_opt, search_check);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_usage(e.code()) ? kUsage : kViolation;
  }
  return kUsage;
}
