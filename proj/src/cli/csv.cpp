#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "badmm/cli.hpp"

namespace badmm::cli {
namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::string_view reg_name(RegSelection r) {
  switch (r) {
    case RegSelection::L1: return "l1";
    case RegSelection::LHalf: return "lhalf";
    case RegSelection::Both: return "both";
  }
  return "?";
}

}  // namespace

CsvMetadata make_metadata(const RunConfig& cfg, std::string_view solver_name,
                          const SolveResult& result) {
  const AnalysisConstants& c = result.constants;
  CsvMetadata m = {
      {"solver", std::string(solver_name)},
      {"n", std::to_string(cfg.n)},
      {"m", std::to_string(cfg.m)},
      {"lambda", format_real(cfg.lambda)},
      {"alpha", format_real(cfg.alpha)},
      {"mu", format_real(cfg.mu)},
      {"reg", std::string(reg_name(cfg.reg))},
      {"seed", std::to_string(cfg.seed)},
      {"jumps", std::to_string(cfg.jumps)},
      {"noise_sigma", format_real(cfg.noise_sigma)},
      {"max_iters", std::to_string(cfg.max_iters)},
      {"tol", format_real(cfg.tol)},
      {"strategy", cfg.strategy == StrategySelection::ClosedForm ? "closed_form" : "prox_linear"},
      {"diagnostics", cfg.diagnostics ? "true" : "false"},
      {"mu0", format_real(c.mu0)},
      {"mu_B", format_real(c.mu_b)},
      {"mu1", format_real(c.mu1)},
      {"mu2", format_real(c.mu2)},
      {"ell_f", format_real(c.ell_f)},
      {"ell_phi", format_real(c.ell_phi)},
      {"ell_psi", format_real(c.ell_psi)},
      {"sigma0", format_real(c.sigma0)},
      {"sigma1", format_real(c.sigma1)},
      {"kappa1", format_real(c.kappa1)},
      {"kappa2", format_real(c.kappa2)},
      {"alpha_lower_bound", format_real(alpha_lower_bound(c))},
      {"alpha_rule", alpha_rule_satisfied(c) ? "pass" : "fail"},
      {"termination", std::string(to_string(result.reason))},
      {"iterations", std::to_string(result.trace.size())},
      {"prng", "mt19937_64+box_muller"},
  };
  return m;
}

void emit_csv(const std::vector<IterationRecord>& trace, const CsvMetadata& meta,
              const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& [key, value] : meta) out << '#' << key << '=' << value << '\n';
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
  for (const IterationRecord& r : trace) {
    std::optional<double> m10, m11, maux, sg, ss, sp;
    if (r.margins) {
      m10 = r.margins->m10;
      m11 = r.margins->m11;
      maux = r.margins->m_aux;
    }
    if (r.stationarity) {
      sg = r.stationarity->grad_x;
      ss = r.stationarity->subdiff_y;
      sp = r.stationarity->primal;
    }
    out << r.k << ',' << format_real(r.l_alpha) << ',' << format_real(r.l_hat) << ','
        << format_real(r.primal_residual) << ',' << format_real(r.dx) << ','
        << format_real(r.dy) << ',' << format_real(r.dp) << ',' << format_opt(r.mse_x) << ','
        << format_opt(r.mse_y) << ',' << format_opt(m10) << ',' << format_opt(m11) << ','
        << format_opt(maux) << ',' << format_opt(sg) << ',' << format_opt(ss) << ','
        << format_opt(sp) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

ParsedCsv read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  ParsedCsv parsed;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!header_seen && !line.empty() && line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw IoError(path + ": malformed metadata line");
      parsed.meta.emplace_back(line.substr(1, eq - 1), line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::array<std::optional<double>, 15> row;
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const std::string field =
          line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (col >= row.size()) throw IoError(path + ": too many fields");
      if (!field.empty()) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
          throw IoError(path + ": bad number '" + field + "'");
        }
        row[col] = v;
      }
      ++col;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (col != row.size()) throw IoError(path + ": expected 15 fields");
    parsed.rows.push_back(row);
  }
  if (!header_seen) throw IoError(path + ": missing column header");
  return parsed;
}

}  // namespace badmm::cli
