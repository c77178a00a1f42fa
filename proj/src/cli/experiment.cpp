#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>

#include "badmm/cli.hpp"
#include "badmm/errors.hpp"
#include "badmm/kernels.hpp"

namespace badmm::cli {
namespace {

struct SolverRun {
  std::string name;  // "hadmm" (ℓ½) or "sadmm" (ℓ₁)
  RegularizerKind kind;
  SolveResult result;
  double seconds = 0.0;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

SolverRun run_one(const RunConfig& cfg, RegularizerKind kind) {
  TvProblemParams params;
  params.n = cfg.n;
  params.m = cfg.m;
  params.lambda = cfg.lambda;
  params.reg_kind = kind;
  params.seed = cfg.seed;
  params.noise_sigma = cfg.noise_sigma;
  params.jumps = cfg.jumps;
  const TvInstance inst = make_tv_problem(params);

  SolverConfig sc = SolverConfig::closed_form(kind, cfg.alpha, cfg.mu);
  if (cfg.strategy == StrategySelection::ProxLinear) sc.strategy = Strategy::ProxLinearY;
  sc.max_iters = cfg.max_iters;
  sc.tol = cfg.tol;
  sc.record_diagnostics = cfg.diagnostics;

  const auto t0 = std::chrono::steady_clock::now();
  BadmmSolver solver(inst.problem, sc);
  SolverRun run{kind == RegularizerKind::LHalf ? "hadmm" : "sadmm", kind,
                solver.solve(SolverState::zeros(inst.problem), inst.truth), 0.0};
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void describe_run(std::ostream& s, const SolverRun& run) {
  const auto& trace = run.result.trace;
  const AnalysisConstants& c = run.result.constants;
  s << "[" << run.name << "] regularizer=" << to_string(run.kind) << "\n";
  s << "  iterations=" << trace.size() << " termination=" << to_string(run.result.reason) << "\n";
  if (trace.empty()) return;
  const IterationRecord& first = trace.front();
  const IterationRecord& last = trace.back();
  s << "  step norm: k=1 " << fmt(first.dz) << ", final " << fmt(last.dz) << ", reduction "
    << fmt(last.dz > 0.0 ? first.dz / last.dz : std::numeric_limits<double>::infinity()) << "\n";
  if (last.mse_x) s << "  final mse_x=" << fmt(*last.mse_x) << " mse_y=" << fmt(*last.mse_y) << "\n";
  if (last.stationarity) {
    s << "  final stationarity grad_x=" << fmt(last.stationarity->grad_x)
      << " subdiff_y=" << fmt(last.stationarity->subdiff_y)
      << " primal=" << fmt(last.stationarity->primal) << "\n";
  }
  if (last.margins) {
    double m10 = INFINITY, m11 = INFINITY, maux = INFINITY;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      m10 = std::min(m10, trace[i].margins->m10);
      if (i > 0) m11 = std::min(m11, trace[i].margins->m11);
      maux = std::min(maux, trace[i].margins->m_aux);
    }
    s << "  min margins: m10=" << fmt(m10) << " m11(k>=2)=" << fmt(m11) << " mAux=" << fmt(maux)
      << "\n";
  }
  s << "  constants: mu0=" << fmt(c.mu0) << " ell_f=" << fmt(c.ell_f) << " ell_phi=" << fmt(c.ell_phi)
    << " sigma0=" << fmt(c.sigma0) << " sigma1=" << fmt(c.sigma1) << "\n";
  s << "  alpha rule: alpha=" << fmt(c.alpha) << " lower_bound=" << fmt(alpha_lower_bound(c))
    << " -> " << (alpha_rule_satisfied(c) ? "pass" : "fail") << "\n";
}

void compare_runs(std::ostream& s, const SolverRun& h, const SolverRun& sa) {
  const auto& ht = h.result.trace;
  const auto& st = sa.result.trace;
  if (ht.empty() || st.empty() || !ht.back().mse_y || !st.back().mse_y) return;
  s << "comparison of mse_y (hadmm vs sadmm):\n";
  s << "  k, hadmm, sadmm\n";
  const std::size_t common = std::min(ht.size(), st.size());
  std::size_t hadmm_better = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (*ht[i].mse_y <= *st[i].mse_y) ++hadmm_better;
  }
  for (std::size_t k = 1; k <= common; k *= 10) {
    s << "  " << k << ", " << fmt(*ht[k - 1].mse_y) << ", " << fmt(*st[k - 1].mse_y) << "\n";
  }
  const double hf = *ht.back().mse_y;
  const double sf = *st.back().mse_y;
  s << "  final, " << fmt(hf) << " (k=" << ht.size() << "), " << fmt(sf) << " (k=" << st.size()
    << ")\n";
  s << "  iterations with hadmm mse_y <= sadmm mse_y: " << hadmm_better << " of " << common << "\n";
  s << "  dominant at final iteration: " << (hf < sf ? "hadmm" : (sf < hf ? "sadmm" : "tie"))
    << "\n";
}

}  // namespace

int run_experiment(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_path, ec);
  if (ec || !fs::is_directory(cfg.output_path)) {
    err << "error: cannot create output directory '" << cfg.output_path << "': " << ec.message()
        << "\n";
    return kExitIo;
  }

  std::vector<RegularizerKind> kinds;
  if (cfg.reg != RegSelection::L1) kinds.push_back(RegularizerKind::LHalf);
  if (cfg.reg != RegSelection::LHalf) kinds.push_back(RegularizerKind::L1);

  std::vector<SolverRun> runs;
  try {
    std::vector<std::future<SolverRun>> jobs;
    for (RegularizerKind k : kinds) {
      jobs.push_back(std::async(std::launch::async, [&cfg, k] { return run_one(cfg, k); }));
    }
    for (auto& j : jobs) runs.push_back(j.get());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_solver_failure() ? kExitSolver : kExitUsage;
  }

  try {
    const std::string stamp = cfg.timestamp ? timestamp_utc() : std::string();
    for (const SolverRun& run : runs) {
      CsvMetadata meta = make_metadata(cfg, run.name, run.result);
      meta.emplace_back("kernels", std::string(kernels::to_string(kernels::active_backend())));
      if (cfg.timestamp) meta.emplace_back("timestamp", stamp);
      const fs::path path = fs::path(cfg.output_path) / (run.name + ".csv");
      emit_csv(run.result.trace, meta, path.string());
      if (!cfg.quiet) {
        out << run.name << ": " << run.result.trace.size() << " iterations ("
            << to_string(run.result.reason) << "), " << fmt(run.seconds) << " s -> "
            << path.string() << "\n";
      }
    }

    const fs::path summary_path = fs::path(cfg.output_path) / "summary.txt";
    std::ofstream summary(summary_path, std::ios::binary | std::ios::trunc);
    if (!summary) throw IoError("cannot open '" + summary_path.string() + "' for writing");
    summary << "n=" << cfg.n << " m=" << cfg.m << " lambda=" << cfg.lambda
            << " alpha=" << cfg.alpha << " mu=" << cfg.mu << " seed=" << cfg.seed
            << " jumps=" << cfg.jumps << " noise_sigma=" << cfg.noise_sigma << " strategy="
            << (cfg.strategy == StrategySelection::ClosedForm ? "closed_form" : "prox_linear")
            << "\n";
    summary << "mse columns are (1/n)*||x* - x^k|| against the generating signal\n\n";
    for (const SolverRun& run : runs) describe_run(summary, run);
    if (runs.size() == 2) {
      summary << "\n";
      compare_runs(summary, runs[0], runs[1]);
    }
    summary.flush();
    if (!summary) throw IoError("write to '" + summary_path.string() + "' failed");
    if (!cfg.quiet) out << "summary -> " << summary_path.string() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_experiment(cfg, out, err);
}

}  // namespace badmm::cli
