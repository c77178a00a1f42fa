#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>

#include "badmm/cli.hpp"

namespace badmm::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid value for --" + key + ": '" + text +
                     "' (expected a nonnegative integer)");
  }
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    throw UsageError("invalid value for --" + key + ": '" + text + "' (expected a real number)");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw UsageError("invalid value for --" + key + ": '" + text + "' (expected true/false)");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

struct Field {
  const char* name;  // long flag name without dashes
  const char* help;
  Setter set;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"n", "signal length (>= 2)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.n = parse_uint(k, v); }},
      {"m", "number of measurements (>= 1)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.m = parse_uint(k, v); }},
      {"lambda", "regularization weight (> 0)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.lambda = parse_real(k, v); }},
      {"alpha", "penalty parameter (> 0)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha = parse_real(k, v); }},
      {"mu", "Bregman scale for phi and psi (> 0)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.mu = parse_real(k, v); }},
      {"reg", "l1 | lhalf | both",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "l1") c.reg = RegSelection::L1;
         else if (v == "lhalf") c.reg = RegSelection::LHalf;
         else if (v == "both") c.reg = RegSelection::Both;
         else throw UsageError("invalid value for --" + k + ": '" + v + "' (l1|lhalf|both)");
       }},
      {"seed", "PRNG seed",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_uint(k, v); }},
      {"jumps", "change points in the true signal (1 <= jumps < n)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.jumps = parse_uint(k, v); }},
      {"noise-sigma", "std. dev. of additive measurement noise (>= 0)",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.noise_sigma = parse_real(k, v);
       }},
      {"max-iters", "iteration cap (>= 1)",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.max_iters = parse_uint(k, v);
       }},
      {"tol", "relative step tolerance (>= 0)",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.tol = parse_real(k, v); }},
      {"strategy", "closed_form | prox_linear",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "closed_form") c.strategy = StrategySelection::ClosedForm;
         else if (v == "prox_linear") c.strategy = StrategySelection::ProxLinear;
         else throw UsageError("invalid value for --" + k + ": '" + v + "' (closed_form|prox_linear)");
       }},
      {"output", "output directory",
       [](RunConfig& c, const std::string&, const std::string& v) { c.output_path = v; }},
      {"diagnostics", "record descent margins and stationarity (true|false)",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.diagnostics = parse_bool(k, v);
       }},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  const std::string k = normalize_key(key);
  for (const Field& f : fields())
    if (k == f.name) return &f;
  return nullptr;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw UsageError(msg); };
  if (c.n < 2) fail("--n must be >= 2");
  if (c.m < 1) fail("--m must be >= 1");
  if (!(c.lambda > 0.0)) fail("--lambda must be > 0");
  if (!(c.alpha > 0.0)) fail("--alpha must be > 0");
  if (!(c.mu > 0.0)) fail("--mu must be > 0");
  if (c.jumps < 1 || c.jumps >= c.n) fail("--jumps must satisfy 1 <= jumps < n");
  if (c.noise_sigma < 0.0) fail("--noise-sigma must be >= 0");
  if (c.max_iters < 1) fail("--max-iters must be >= 1");
  if (c.tol < 0.0) fail("--tol must be >= 0");
  if (c.output_path.empty()) fail("--output must not be empty");
}

std::optional<std::string> find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[normalize_key(trim(t.substr(0, eq)))] = trim(t.substr(eq + 1));
  }
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;

  if (auto path = find_config_arg(args)) {
    cfg.config_file = *path;
    for (const auto& [key, value] : read_config_file(*path)) {
      const Field* f = find_field(key);
      if (!f) throw UsageError(*path + ": unknown key '" + key + "'");
      f->set(cfg, f->name, value);
    }
  }

  CLI::App app{"Bregman ADMM for l1 / l1/2 total-variation sparse recovery", "badmm_run"};
  std::map<std::string, std::string> given;
  for (const Field& f : fields()) {
    given[f.name];
    app.add_option(std::string("--") + f.name, given[f.name], f.help);
  }
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file (flags override it)");
  bool no_timestamp = false;
  bool quiet = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp line from CSV metadata");
  app.add_flag("--quiet", quiet, "suppress progress output on stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const Field& f : fields()) {
    if (app.get_option(std::string("--") + f.name)->count() > 0) f.set(cfg, f.name, given[f.name]);
  }
  cfg.timestamp = !no_timestamp;
  cfg.quiet = quiet;
  validate(cfg);
  return cfg;
}

}  // namespace badmm::cli
