#include "expunge/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "expunge/certificate_io.hpp"
#include "expunge/constructions.hpp"
#include "expunge/render.hpp"
#include "expunge/search.hpp"

namespace expunge::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Int> parse_list(const std::string& text, const char* what) {
  std::vector<Int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("--") + what + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

const char* yes_no(bool value) { return value ? "yes" : "no"; }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

// Shared case options ---------------------------------------------------------------------------

struct CaseOptions {
  Int g = 0, r = 0, d = 0, m = 2, shift = 0;
  std::string delta, w;
  double budget = 10.0;
  bool strict_vi = true;
  bool deterministic = false;
  bool verbose = false;
};

void add_case_flags(CLI::App* cmd, CaseOptions& o, bool required) {
  auto* g = cmd->add_option("--g", o.g, "genus");
  auto* r = cmd->add_option("--r", o.r, "rank");
  auto* d = cmd->add_option("--d", o.d, "degree");
  if (required) {
    g->required();
    r->required();
    d->required();
  }
  cmd->add_option("--m", o.m, "multiplication degree")->capture_default_str();
  cmd->add_option("--delta", o.delta, "comma-separated (g,r,d)-sequence");
  cmd->add_option("--w", o.w, "comma-separated twist vector c_2,...,c_g");
  cmd->add_option("--shift", o.shift, "shift a of an a-shifted sequence")->capture_default_str();
}

void add_run_flags(CLI::App* cmd, CaseOptions& o) {
  cmd->add_option("--budget", o.budget, "search budget in seconds")->capture_default_str();
  cmd->add_option("--strict-vi", o.strict_vi, "require both Rule VI rows in columns i and i+1")->capture_default_str();
  cmd->add_flag("--deterministic", o.deterministic, "byte-stable output (no timings)");
  cmd->add_flag("--verbose", o.verbose, "per-step trace");
}

/// Each value repeated r+g-d (+shift) times in increasing order, then the 0..r cycle.
std::vector<Int> default_sequence(const CaseParams& p, Int shift) {
  const Int each = p.excess() + shift;
  std::vector<Int> out;
  for (Int v = 0; v <= p.r && static_cast<Int>(out.size()) < p.g; ++v)
    for (Int k = 0; k < each && static_cast<Int>(out.size()) < p.g; ++k) out.push_back(v);
  for (Int k = 0; static_cast<Int>(out.size()) < p.g; ++k) out.push_back(k % (p.r + 1));
  return out;
}

/// c_i = floor((i-1) md / g).
std::vector<Int> default_twist(const CaseParams& p) {
  std::vector<Int> out;
  const Int md = mul(p.m, p.d);
  for (Int i = 2; i <= p.g; ++i) out.push_back(mul(i - 1, md) / p.g);
  return out;
}

GrdSequence sequence_from(const CaseOptions& o, const CaseParams& p) {
  auto entries = o.delta.empty() ? default_sequence(p, o.shift) : parse_list(o.delta, "delta");
  return GrdSequence::validate(std::move(entries), p.g, p.r, p.d, o.shift);
}

TwistVector twist_from(const CaseOptions& o, const CaseParams& p) {
  auto entries = o.w.empty() ? default_twist(p) : parse_list(o.w, "w");
  if (static_cast<Int>(entries.size()) != p.g - 1)
    throw UsageError("--w needs g-1 = " + std::to_string(p.g - 1) + " entries, got " + std::to_string(entries.size()));
  return TwistVector{std::move(entries), mul(p.m, p.d)};
}

// Certification ---------------------------------------------------------------------------------

struct CaseOutcome {
  std::optional<Certificate> certificate;
  std::string provenance;
  std::string status;  // verified | not_found | budget | out_of_scope | error
  std::string message;
  VerificationReport report;
  int exit = kNotFound;
};

std::optional<ConstructionResult> construction_for(const CaseParams& p) {
  try {
    if (p.m == 2 && p.r >= 3) return m2_certify(p.g, p.r, p.d);
    if (p.m == 3 && p.r >= 3) return m3_certify(p.g, p.r, p.d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OutOfScope && e.code() != ErrorCode::HypothesisViolation &&
        e.code() != ErrorCode::NotInjective)
      throw;
  }
  return std::nullopt;
}

CaseOutcome certify_case(const CaseParams& p, const CaseOptions& o) {
  CaseOutcome out;
  VerifyOptions vopt;
  vopt.strict_vi = o.strict_vi;
  const bool explicit_inputs = !o.delta.empty() || !o.w.empty() || o.shift != 0;
  if (!explicit_inputs) {
    if (auto built = construction_for(p)) {
      out.certificate = built->certificate;
      out.provenance = built->provenance;
    }
  }
  if (!out.certificate) {
    const auto seq = sequence_from(o, p);
    const auto w = twist_from(o, p);
    const TensorTable table = build_tensor_table(build_vanishing_table(seq), p.m);
    const ErasureMask mask = erase(table, w);
    SearchConfig config;
    config.budget = std::chrono::milliseconds(static_cast<long long>(o.budget * 1000.0));
    config.verify = vopt;
    const auto found = search_certificate(table, mask, w, p.expected_rank(), config);
    out.provenance = "search:" + found.strategy;
    if (!found.certificate) {
      out.status = found.status == SearchStatus::BudgetExhausted ? "budget" : "not_found";
      out.exit = found.status == SearchStatus::BudgetExhausted ? kBudget : kNotFound;
      out.message = "no certificate found (" + std::string(to_string(found.status)) + ", " +
                    std::to_string(found.nodes) + " nodes)";
      return out;
    }
    out.certificate = found.certificate;
  }
  out.report = verify_certificate(*out.certificate, vopt);
  const bool full = out.certificate->N() == p.expected_rank();
  out.status = out.report.valid && full ? "verified" : "error";
  out.exit = out.report.valid && full ? kVerified : kNotFound;
  if (!out.report.valid) out.message = out.report.failure;
  return out;
}

std::string summary_line(const CaseParams& p, const CaseOutcome& c) {
  std::ostringstream line;
  line << "case=(" << p.g << "," << p.r << "," << p.d << "," << p.m << ")";
  if (c.certificate) {
    line << " N=" << c.certificate->N() << " target=" << p.expected_rank() << " steady=" << yes_no(c.report.steady)
         << " unimaginative=" << yes_no(c.report.unimaginative);
  }
  line << " provenance=" << c.provenance << " status=" << c.status;
  if (!c.message.empty()) line << " (" << c.message << ")";
  return line.str();
}

// Subcommands -----------------------------------------------------------------------------------

int cmd_table(const CaseOptions& o, const std::string& kind_in, const std::string& format, const std::string& order_name,
              const std::string& path, std::ostream& out) {
  const auto p = CaseParams::make(o.g, o.r, o.d, o.m);
  const TableFormat fmt = parse_table_format(format);
  const std::string kind = kind_in.empty() ? (o.w.empty() ? "tensor" : "erased") : kind_in;
  const auto seq = sequence_from(o, p);
  const VanishingTable vt = build_vanishing_table(seq);
  std::string text;
  if (kind == "vanishing") {
    text = render_vanishing(vt, fmt);
  } else if (kind == "tensor" || kind == "erased") {
    const TensorTable table = build_tensor_table(vt, p.m);
    std::vector<std::size_t> order;
    if (order_name == "degree") {
      order = degree_row_order(table.row_indices());
    } else if (order_name != "lex") {
      throw UsageError("--order must be lex or degree");
    }
    const auto* order_ptr = order.empty() ? nullptr : &order;
    if (kind == "erased") {
      if (o.w.empty()) throw UsageError("--kind erased needs --w");
      const auto w = twist_from(o, p);
      const ErasureMask mask = erase(table, w);
      text = render_tensor(table, fmt, &mask, &w, order_ptr);
    } else {
      text = render_tensor(table, fmt, nullptr, nullptr, order_ptr);
    }
  } else {
    throw UsageError("--kind must be vanishing, tensor or erased");
  }
  write_text(path, text, out);
  return kVerified;
}

int cmd_certify(const CaseOptions& o, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto p = CaseParams::make(o.g, o.r, o.d, o.m);
  const auto c = certify_case(p, o);
  if (c.certificate && !path.empty()) write_text(path, serialize_certificate(*c.certificate), out);
  if (o.verbose && c.certificate)
    for (const auto& t : c.report.trace) err << "#" << t.index << " " << t.step.describe() << " remaining=" << t.remaining_after << "\n";
  out << summary_line(p, c) << "\n";
  return c.exit;
}

int cmd_verify(const std::string& path, const CaseOptions& o, std::ostream& out) {
  const Certificate cert = read_certificate_file(path);
  VerifyOptions vopt;
  vopt.strict_vi = o.strict_vi;
  const auto report = verify_certificate(cert, vopt);
  if (o.verbose)
    for (const auto& t : report.trace)
      out << "#" << t.index << " " << t.step.describe() << (t.ok ? " ok" : " FAILED: " + t.diagnostic)
          << " remaining=" << t.remaining_after << "\n";
  if (report.valid) {
    out << "valid N=" << report.N << " steady=" << yes_no(report.steady)
        << " unimaginative=" << yes_no(report.unimaginative) << "\n";
    return kVerified;
  }
  out << "invalid: " << report.failure << "\n";
  if (!report.remaining.empty()) {
    out << "remaining:";
    for (const auto& row : report.remaining) out << " " << row.to_string();
    out << "\n";
  }
  return kNotFound;
}

struct SweepOptions {
  std::string g, r, d;
  Int g_max = 0;
  unsigned parallel = 1;
  std::string out_dir;
  std::string summary;
};

struct SweepRow {
  CaseParams params;
  Int n = 0;
  std::string provenance;
  std::string status;
  long long ms = 0;
};

int cmd_sweep(const CaseOptions& o, const SweepOptions& s, std::ostream& out, std::ostream& err) {
  if (s.r.empty()) throw UsageError("sweep needs --r");
  if (s.g.empty() && s.g_max <= 0) throw UsageError("sweep needs --g or --g-max");
  const auto ranks = parse_range(s.r);
  std::vector<long long> genera;
  if (!s.g.empty()) {
    genera = parse_range(s.g);
  } else {
    for (long long g = 1; g <= s.g_max; ++g) genera.push_back(g);
  }
  std::optional<std::vector<long long>> degrees;
  if (!s.d.empty()) degrees = parse_range(s.d);

  std::vector<CaseParams> cases;
  for (long long r : ranks)
    for (long long g : genera) {
      if (s.g_max > 0 && g > s.g_max) continue;
      for (Int d = 1; d < r + g; ++d) {
        if (degrees && std::find(degrees->begin(), degrees->end(), d) == degrees->end()) continue;
        const auto p = CaseParams::make(g, r, d, o.m);
        if (p.rho() >= 0 && p.excess() > 0) cases.push_back(p);
      }
    }
  if (!s.out_dir.empty()) std::filesystem::create_directories(s.out_dir);

  std::vector<SweepRow> rows(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex io;
  auto worker = [&] {
    for (std::size_t k = next++; k < cases.size(); k = next++) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row{cases[k], 0, "", "", 0};
      try {
        const auto c = certify_case(cases[k], o);
        row.provenance = c.provenance;
        row.status = c.status;
        if (c.certificate) row.n = c.certificate->N();
        if (c.certificate && !s.out_dir.empty()) {
          const auto& p = cases[k];
          const auto file = std::filesystem::path(s.out_dir) / ("g" + std::to_string(p.g) + "_r" + std::to_string(p.r) +
                                                                "_d" + std::to_string(p.d) + "_m" + std::to_string(p.m) +
                                                                ".json");
          write_certificate_file(file.string(), *c.certificate);
        }
      } catch (const Error& e) {
        row.status = "error";
        row.provenance = std::string(to_string(e.code()));
        std::lock_guard lock(io);
        err << to_string(cases[k]) << ": " << e.what() << "\n";
      }
      if (!o.deterministic)
        row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      rows[k] = std::move(row);
    }
  };
  const unsigned threads = s.parallel == 0 ? std::max(1u, std::thread::hardware_concurrency()) : s.parallel;
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "g,r,d,m,N,provenance,status,ms\n";
  std::size_t verified = 0;
  for (const auto& row : rows) {
    csv << row.params.g << "," << row.params.r << "," << row.params.d << "," << row.params.m << "," << row.n << ","
        << row.provenance << "," << row.status << "," << row.ms << "\n";
    if (row.status == "verified") ++verified;
  }
  write_text(s.summary, csv.str(), out);
  err << "sweep: " << rows.size() << " cases, " << verified << " verified, " << rows.size() - verified << " failed\n";
  return verified == rows.size() ? kVerified : kNotFound;
}

int cmd_catalog(const std::string& out_dir, std::ostream& out) {
  struct Entry {
    const char* name;
    ConstructionResult (*make)();
  };
  const Entry entries[] = {
      {"m2-r3-g4", [] { return example_g4_r3_d6(); }}, {"m2-r3-g5", [] { return example_g5_r3_d7(); }},
      {"m2-critical", [] { return example_g10_r4_d12(); }}, {"m3-r3", [] { return m3_catalog(3); }},
      {"m3-r4", [] { return m3_catalog(4); }},          {"m3-r5", [] { return m3_catalog(5); }},
  };
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  out << "name,g,r,d,m,N,provenance,status\n";
  bool all = true;
  for (const auto& e : entries) {
    const auto result = e.make();
    const auto report = verify_certificate(*result.certificate);
    all = all && report.valid;
    const auto& p = result.params;
    out << e.name << "," << p.g << "," << p.r << "," << p.d << "," << p.m << "," << result.certificate->N() << ","
        << result.provenance << "," << (report.valid ? "verified" : "invalid") << "\n";
    if (!out_dir.empty())
      write_certificate_file((std::filesystem::path(out_dir) / (std::string(e.name) + ".json")).string(),
                             *result.certificate);
  }
  return all ? kVerified : kNotFound;
}

}  // namespace

std::vector<long long> parse_range(const std::string& text) {
  std::vector<long long> out;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const long long lo = std::stoll(text.substr(0, dots));
      const long long hi = std::stoll(text.substr(dots + 2));
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + text + "'");
  }
  for (Int v : parse_list(text, "range")) out.push_back(v);
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build, certify and verify expungeability certificates for tensor tables"};
  app.require_subcommand(1);

  CaseOptions o;
  std::string format = "text", path, kind, order = "degree", cert_path, out_dir;
  SweepOptions sw;

  auto* table = app.add_subcommand("table", "render T', T or T_w");
  add_case_flags(table, o, true);
  table->add_option("--kind", kind, "vanishing | tensor | erased (default: erased when --w is given)");
  table->add_option("--format", format, "text | csv | latex")->capture_default_str();
  table->add_option("--order", order, "row order: lex | degree")->capture_default_str();
  table->add_option("--out", path, "output path (default stdout)");

  auto* certify = app.add_subcommand("certify", "construct or search a certificate and write it");
  add_case_flags(certify, o, true);
  add_run_flags(certify, o);
  certify->add_option("--out", path, "certificate path");

  auto* verify = app.add_subcommand("verify", "replay a certificate file");
  verify->add_option("path", cert_path, "certificate file")->required();
  verify->add_option("--strict-vi", o.strict_vi, "require both Rule VI rows in columns i and i+1")->capture_default_str();
  verify->add_flag("--verbose", o.verbose, "per-step trace");

  auto* sweep = app.add_subcommand("sweep", "certify every case in a range");
  sweep->add_option("--g", sw.g, "genus range, e.g. 7..12");
  sweep->add_option("--g-max", sw.g_max, "genus upper bound");
  sweep->add_option("--r", sw.r, "rank range, e.g. 3..6")->required();
  sweep->add_option("--d", sw.d, "degree range (default: every d with rho >= 0 and r+g-d > 0)");
  sweep->add_option("--m", o.m, "multiplication degree")->capture_default_str();
  sweep->add_option("--parallel", sw.parallel, "worker threads (0 = hardware)")->capture_default_str();
  sweep->add_option("--out", sw.out_dir, "directory for certificate files");
  sweep->add_option("--summary", sw.summary, "CSV summary path (default stdout)");
  add_run_flags(sweep, o);

  auto* catalog = app.add_subcommand("catalog", "verify the stored worked examples");
  catalog->add_option("--out", out_dir, "directory for certificate files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*table) return cmd_table(o, kind, format, order, path, out);
    if (*certify) return cmd_certify(o, path, out, err);
    if (*verify) return cmd_verify(cert_path, o, out);
    if (*sweep) return cmd_sweep(o, sw, out, err);
    if (*catalog) return cmd_catalog(out_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"expunge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace expunge::cli
