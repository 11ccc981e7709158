#include "pbclink/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pbclink/analysis.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/frame_io.hpp"
#include "pbclink/linking.hpp"
#include "pbclink/synth.hpp"

namespace pbclink {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string frame;
  std::string output;
  std::string convention = "unwrapped";
  std::string exec = "parallel";
  int threads = 0;
  double tol = LKPOptions{}.tol;
  int max_shells = LKPOptions{}.max_shells;
  double bin_width = kDefaultBinWidth;
  std::vector<std::string> reports;
  std::string fixture;
  MeltSpec melt;
  std::vector<double> edge{10.0};
  bool closed = false;
  bool mixed = false;
};

// Writes to the output file when one is given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : path_(path), out_(out) {}

  std::ostream& stream() { return path_.empty() ? out_ : buffer_; }

  void commit() {
    if (path_.empty()) {
      out_.flush();
      return;
    }
    const fs::path p(path_);
    if (p.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open " + path_ + " for writing");
    f << buffer_.str();
    f.flush();
    if (!f) throw IoError("write failed: " + path_);
  }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostringstream buffer_;
};

Convention parse_convention(const std::string& s) {
  return s == "wrapped" ? Convention::wrapped : Convention::unwrapped;
}

Execution parse_exec(const std::string& s) {
  if (s == "serial") return Execution::serial;
  if (s == "reference") return Execution::reference;
  return Execution::parallel;
}

std::string frame_id(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_lk(const Options& o, std::ostream& out, std::ostream& err) {
  const Cell cell = read_frame(fs::path(o.frame));
  LinkingReport report = pairwise_lk(cell, parse_exec(o.exec));
  report.frame_id = frame_id(o.frame);
  Sink sink(o.output, out);
  write_report(report, sink.stream());
  sink.commit();
  int failed = 0;
  for (const auto& row : report.rows) {
    if (row.status == PairStatus::ok) continue;
    ++failed;
    err << "pbclink: pair (" << row.chain_i << ", " << row.chain_j << "): " << to_string(row.status) << ": "
        << row.message << '\n';
  }
  return failed ? kExitPartial : kExitOk;
}

struct PairOutcome {
  std::string status = "ok";
  std::string message;
};

template <class Fn>
PairOutcome guarded(Fn&& fn) {
  try {
    fn();
    return {};
  } catch (const ContactError& e) {
    return {"contact", e.what()};
  } catch (const Error& e) {
    return {"error", e.what()};
  }
}

int cmd_lkp(const Options& o, std::ostream& out, std::ostream& err) {
  const Cell cell = read_frame(fs::path(o.frame));
  const LKPOptions opts{o.tol, o.max_shells};
  Sink sink(o.output, out);
  auto& s = sink.stream();
  s << "# frame," << frame_id(o.frame) << "\n# tol," << format_real(o.tol) << "\n# max_shells," << o.max_shells
    << '\n';
  s << "chain_i,chain_j,lkp,last_shell,shell_sum,converged,status\n";
  int failed = 0;
  const auto n = static_cast<ChainId>(cell.chains.size());
  for (ChainId i = 0; i < n; ++i) {
    for (ChainId j = i + 1; j < n; ++j) {
      LKPResult r;
      r.value = std::nan("");
      auto outcome = guarded([&] { r = periodic_linking_truncated(cell, i, j, opts); });
      if (outcome.status == "ok" && !r.converged) outcome = {"not_converged", "no convergence within max shells"};
      if (outcome.status != "ok") {
        ++failed;
        err << "pbclink: pair (" << i << ", " << j << "): " << outcome.status << ": " << outcome.message << '\n';
      }
      s << i << ',' << j << ',' << format_real(r.value) << ',' << r.shells_used << ','
        << format_real(r.last_shell_contribution) << ',' << (r.converged ? 1 : 0) << ',' << outcome.status << '\n';
    }
  }
  sink.commit();
  return failed ? kExitPartial : kExitOk;
}

int cmd_diag(const Options& o, std::ostream& out, std::ostream& err) {
  const Cell cell = read_frame(fs::path(o.frame));
  const LKPOptions opts{o.tol, o.max_shells};
  Sink sink(o.output, out);
  auto& s = sink.stream();
  s << "# frame," << frame_id(o.frame) << "\n# tol," << format_real(o.tol) << "\n# max_shells," << o.max_shells
    << '\n';
  s << "chain_i,chain_j,lk,lkp,diagnostic,status\n";
  int failed = 0;
  const auto n = static_cast<ChainId>(cell.chains.size());
  for (ChainId i = 0; i < n; ++i) {
    for (ChainId j = i + 1; j < n; ++j) {
      double lk = std::nan(""), lkp = std::nan(""), diag = std::nan("");
      auto outcome = guarded([&] {
        lk = local_periodic_linking(cell, i, j).value;
        const LKPResult r = periodic_linking_truncated(cell, i, j, opts);
        lkp = r.value;
        if (r.converged) diag = std::fabs(lkp - lk);
      });
      if (outcome.status == "ok" && std::isnan(diag)) outcome = {"not_converged", "no convergence within max shells"};
      if (outcome.status != "ok") {
        ++failed;
        err << "pbclink: pair (" << i << ", " << j << "): " << outcome.status << ": " << outcome.message << '\n';
      }
      s << i << ',' << j << ',' << format_real(lk) << ',' << format_real(lkp) << ',' << format_real(diag) << ','
        << outcome.status << '\n';
    }
  }
  sink.commit();
  return failed ? kExitPartial : kExitOk;
}

int cmd_close(const Options& o, std::ostream& out, std::ostream& err) {
  const Cell cell = read_frame(fs::path(o.frame));
  const ClosedCell closed = close_all_chains(cell);
  Sink sink(o.output, out);
  write_frame(closed.cell, sink.stream(), parse_convention(o.convention));
  sink.commit();
  int failed = 0;
  for (std::size_t k = 0; k < closed.closure_errors.size(); ++k) {
    if (closed.closure_errors[k].empty()) continue;
    ++failed;
    err << "pbclink: chain " << k << " left open: " << closed.closure_errors[k] << '\n';
  }
  return failed ? kExitPartial : kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const LinkingReport a = read_report(fs::path(o.reports.at(0)));
  DistributionSummary summary;
  if (o.reports.size() == 2) {
    summary = difference_report(a, read_report(fs::path(o.reports[1])), o.bin_width);
  } else {
    std::vector<double> values;
    for (const auto& row : a.rows)
      if (row.status == PairStatus::ok) values.push_back(row.value);
    summary = summarize(std::move(values), o.bin_width);
  }
  Sink sink(o.output, out);
  write_summary(summary, sink.stream());
  sink.commit();
  return kExitOk;
}

int cmd_gen(Options o, std::ostream& out) {
  if (o.edge.size() == 1)
    o.melt.edge = Vec3::Constant(o.edge[0]);
  else if (o.edge.size() == 3)
    o.melt.edge = Vec3(o.edge[0], o.edge[1], o.edge[2]);
  else
    throw CLI::ValidationError("--edge", "takes one or three values");
  o.melt.closure = o.mixed ? ChainClosure::mixed : o.closed ? ChainClosure::closed : ChainClosure::open;
  const Cell cell = generate_melt(o.melt);
  Sink sink(o.output, out);
  write_frame(cell, sink.stream(), parse_convention(o.convention));
  sink.commit();
  return kExitOk;
}

int cmd_fixture(const Options& o, std::ostream& out) {
  const Cell cell = fixture(*fixture_from_string(o.fixture));
  Sink sink(o.output, out);
  write_frame(cell, sink.stream(), parse_convention(o.convention));
  sink.commit();
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linking numbers of polymer chains under periodic boundary conditions"};
  app.name("pbclink");
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  const std::vector<std::string> conventions{"unwrapped", "wrapped"};
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "output file (default stdout)"); };
  auto add_frame = [&](CLI::App* sub) { sub->add_option("frame", o.frame, "frame file")->required(); };
  auto add_lkp_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "shell convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-shells", o.max_shells, "largest shell index")->check(CLI::PositiveNumber);
  };
  auto add_convention = [&](CLI::App* sub) {
    sub->add_option("--convention", o.convention, "coordinate convention of the written frame")
        ->check(CLI::IsMember(conventions));
  };

  auto* lk = app.add_subcommand("lk", "pairwise local periodic linking numbers");
  add_frame(lk);
  add_output(lk);
  lk->add_option("--exec", o.exec, "kernel execution")
      ->check(CLI::IsMember(std::vector<std::string>{"parallel", "serial", "reference"}));

  auto* lkp = app.add_subcommand("lkp", "pairwise truncated periodic linking numbers");
  add_frame(lkp);
  add_output(lkp);
  add_lkp_flags(lkp);

  auto* diag = app.add_subcommand("diag", "per-pair |LK_P - LK|");
  add_frame(diag);
  add_output(diag);
  add_lkp_flags(diag);

  auto* close = app.add_subcommand("close", "close every chain end to end");
  add_frame(close);
  add_output(close);
  add_convention(close);

  auto* stats = app.add_subcommand("stats", "distribution of one report, or of the difference A - B");
  stats->add_option("reports", o.reports, "report CSV files")->required()->expected(1, 2);
  stats->add_option("--bin-width", o.bin_width, "histogram bin width")->check(CLI::PositiveNumber);
  add_output(stats);

  auto* gen = app.add_subcommand("gen", "generate a random melt");
  gen->add_option("--chains", o.melt.chain_count, "number of chains")->check(CLI::PositiveNumber);
  gen->add_option("--beads", o.melt.beads_per_chain, "beads per chain")->check(CLI::Range(3, 100000000));
  gen->add_option("--bond", o.melt.bond_length, "bond length")->check(CLI::PositiveNumber);
  gen->add_option("--edge", o.edge, "box edge, one value or three")->expected(1, 3)->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.melt.seed, "random seed");
  gen->add_option("--min-separation", o.melt.min_separation, "minimum distance between chains")
      ->check(CLI::NonNegativeNumber);
  auto* closed_flag = gen->add_flag("--closed", o.closed, "closed rings");
  gen->add_flag("--mixed", o.mixed, "odd-numbered chains closed")->excludes(closed_flag);
  add_output(gen);
  add_convention(gen);

  auto* fix = app.add_subcommand("fixture", "write a named fixture frame");
  fix->add_option("name", o.fixture, "fixture name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>{"hopf_in_cell", "fig1c_like", "fig2_like", "crossing_pair"}));
  add_output(fix);
  add_convention(fix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (*lk) return cmd_lk(o, out, err);
    if (*lkp) return cmd_lkp(o, out, err);
    if (*diag) return cmd_diag(o, out, err);
    if (*close) return cmd_close(o, out, err);
    if (*stats) return cmd_stats(o, out);
    if (*gen) return cmd_gen(o, out);
    if (*fix) return cmd_fixture(o, out);
  } catch (const CLI::ValidationError& e) {
    err << "pbclink: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "pbclink: error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "pbclink: error: " << (o.frame.empty() ? "" : o.frame + ": ") << e.what() << '\n';
    return kExitParse;
  } catch (const ConventionError& e) {
    err << "pbclink: error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "pbclink: error: " << e.what() << '\n';
    return kExitPartial;
  }
  return kExitUsage;
}

}  // namespace pbclink
