// Copyright 2026 The cfwgan Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line experiment runner over the C interface of libcfwgan.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfwgan/cfwgan.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumeric = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{kExitUsage, msg}; }

void check(cfw_status s) {
  if (s == CFW_OK) return;
  std::string msg = cfw_last_error();
  switch (s) {
    case CFW_ERR_INVALID_ARGUMENT:
    case CFW_ERR_IO: throw CliError{kExitUsage, msg};
    case CFW_ERR_DOMAIN:
    case CFW_ERR_PRECONDITION: throw CliError{kExitPrecondition, msg};
    default: throw CliError{kExitNumeric, msg};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Distribution = std::unique_ptr<cfw_distribution, Deleter<cfw_distribution, cfw_distribution_free>>;
using Kde = std::unique_ptr<cfw_kde, Deleter<cfw_kde, cfw_kde_free>>;
using Samples = std::unique_ptr<cfw_sample_matrix, Deleter<cfw_sample_matrix, cfw_sample_matrix_free>>;
using Generator =
    std::unique_ptr<cfw_linear_generator, Deleter<cfw_linear_generator, cfw_linear_generator_free>>;
using Trace = std::unique_ptr<cfw_sgd_trace, Deleter<cfw_sgd_trace, cfw_sgd_trace_free>>;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180 field quoting.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::string& header_comment, std::vector<std::string> columns)
      : os_(os) {
    os_ << header_comment << "\r\n";
    row(columns);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << field(fields[i]);
    }
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

// Output sink: the --out file when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) usage_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) usage_error("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
};

// ---- configuration ---------------------------------------------------------

enum class Kind { String, Uint, Int, Double, UintList };

struct Param {
  std::string key;  // JSON key; the flag is --key with '_' spelled '-'
  Kind kind;
  json fallback;  // null means "unset"
  std::string help;
};

std::string flag_name(const std::string& key) {
  std::string f = key;
  for (char& c : f) {
    if (c == '_') c = '-';
  }
  return "--" + f;
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    usage_error(flag_name(key) + ": expected a non-negative integer, got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    usage_error(flag_name(key) + ": integer out of range");
  }
}

json convert(const Param& p, const std::vector<std::string>& raw) {
  switch (p.kind) {
    case Kind::String: return raw.back();
    case Kind::Uint: return parse_u64(p.key, raw.back());
    case Kind::Int: {
      const std::string& s = raw.back();
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || s.empty()) usage_error(flag_name(p.key) + ": expected an integer");
      return v;
    }
    case Kind::Double: {
      const std::string& s = raw.back();
      std::size_t pos = 0;
      double v = 0;
      try {
        v = std::stod(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || s.empty()) usage_error(flag_name(p.key) + ": expected a number");
      return v;
    }
    case Kind::UintList: {
      json arr = json::array();
      for (const std::string& item : raw) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) arr.push_back(parse_u64(p.key, tok));
      }
      return arr;
    }
  }
  return nullptr;
}

void check_json_type(const Param& p, const json& v) {
  bool ok = false;
  switch (p.kind) {
    case Kind::String: ok = v.is_string(); break;
    case Kind::Uint: ok = v.is_number_unsigned(); break;
    case Kind::Int: ok = v.is_number_integer(); break;
    case Kind::Double: ok = v.is_number(); break;
    case Kind::UintList:
      ok = v.is_array();
      for (const auto& e : v) ok = ok && e.is_number_unsigned();
      break;
  }
  if (!ok) usage_error("config key '" + p.key + "' has the wrong type");
}

const char* type_label(Kind kind) {
  switch (kind) {
    case Kind::Uint: return "UINT";
    case Kind::Int: return "INT";
    case Kind::Double: return "FLOAT";
    default: return "TEXT";
  }
}

class Command {
 public:
  Command(CLI::App& app, std::string name, std::string description, std::vector<Param> params)
      : name_(std::move(name)) {
    sub_ = app.add_subcommand(name_, description);
    params.insert(params.begin(), {
        {"seed", Kind::Uint, 0, "Random seed"},
        {"out", Kind::String, "", "Output path (default: stdout)"},
        {"threads", Kind::Uint, 1, "Worker threads"},
    });
    params_ = std::move(params);
    sub_->add_option("--config", config_path_, "JSON config file; flags override its keys");
    for (const Param& p : params_) {
      auto& slot = raw_[p.key];
      auto* opt = sub_->add_option(flag_name(p.key), slot, p.help);
      if (p.kind == Kind::UintList) {
        opt->allow_extra_args(true)->expected(1, CLI::detail::expected_max_vector_size);
        opt->type_name("UINT");
      } else {
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->expected(1);
        opt->type_name(type_label(p.kind));
      }
      if (!p.fallback.is_null()) opt->default_str(p.fallback.dump());
    }
  }

  CLI::App* app() const { return sub_; }
  const std::string& name() const { return name_; }

  json resolve() const {
    json cfg = json::object();
    for (const Param& p : params_) cfg[p.key] = p.fallback;
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) usage_error("cannot open config file: " + config_path_);
      json file;
      try {
        file = json::parse(in);
      } catch (const json::exception& e) {
        usage_error(std::string("invalid JSON config: ") + e.what());
      }
      if (!file.is_object()) usage_error("config must be a JSON object");
      for (auto it = file.begin(); it != file.end(); ++it) {
        const Param* p = find(it.key());
        if (!p) usage_error("unknown config key for " + name_ + ": " + it.key());
        if (!it.value().is_null()) check_json_type(*p, it.value());
        cfg[it.key()] = it.value();
      }
    }
    for (const Param& p : params_) {
      const auto& raw = raw_.at(p.key);
      if (!raw.empty()) cfg[p.key] = convert(p, raw);
    }
    return cfg;
  }

 private:
  const Param* find(const std::string& key) const {
    for (const Param& p : params_) {
      if (p.key == key) return &p;
    }
    return nullptr;
  }

  std::string name_;
  CLI::App* sub_ = nullptr;
  std::vector<Param> params_;
  std::string config_path_;
  std::map<std::string, std::vector<std::string>> raw_;
};

std::string header_line(const std::string& command, const json& cfg) {
  json rec = {{"command", command}, {"config", cfg}};
  return std::string("# cfwgan ") + cfw_version() + " " + rec.dump();
}

std::string str(const json& cfg, const char* key) {
  return cfg.at(key).is_null() ? std::string() : cfg.at(key).get<std::string>();
}
std::uint64_t u64(const json& cfg, const char* key) { return cfg.at(key).get<std::uint64_t>(); }
double dbl(const json& cfg, const char* key) { return cfg.at(key).get<double>(); }
bool has(const json& cfg, const char* key) {
  return !cfg.at(key).is_null() && !(cfg.at(key).is_string() && cfg.at(key).get<std::string>().empty());
}

unsigned threads_of(const json& cfg) {
  const std::uint64_t t = u64(cfg, "threads");
  if (t < 1 || t > 1024) usage_error("--threads must be in [1, 1024]");
  return static_cast<unsigned>(t);
}

cfw_activation activation_of(const json& cfg) {
  cfw_activation a;
  check(cfw_activation_parse(str(cfg, "activation").c_str(), &a));
  return a;
}

cfw_bandwidth_rule rule_of(const json& cfg) {
  cfw_bandwidth_rule r;
  check(cfw_bandwidth_rule_parse(str(cfg, "bandwidth_rule").c_str(), &r));
  return r;
}

double bandwidth_of(const json& cfg) {
  if (!has(cfg, "bandwidth")) return 0.0;
  const double h = dbl(cfg, "bandwidth");
  if (!(h > 0.0)) usage_error("--bandwidth must be > 0");
  return h;
}

std::vector<double> load_column(const std::string& path, std::uint64_t column) {
  cfw_sample_matrix* raw = nullptr;
  check(cfw_sample_matrix_read_csv(path.c_str(), &raw));
  Samples mat(raw);
  std::size_t rows = 0, cols = 0;
  check(cfw_sample_matrix_shape(mat.get(), &rows, &cols));
  if (column >= cols) usage_error("--column out of range for " + path);
  std::vector<double> x(rows);
  check(cfw_sample_matrix_column(mat.get(), column, x.data()));
  return x;
}

Distribution parse_dist(const std::string& spec) {
  cfw_distribution* raw = nullptr;
  check(cfw_distribution_parse(spec.c_str(), &raw));
  return Distribution(raw);
}

// ---- subcommands -----------------------------------------------------------

int run_fit1d(const json& cfg) {
  const bool pop = has(cfg, "dist"), emp = has(cfg, "data");
  if (pop == emp) usage_error("fit1d needs exactly one of --dist or --data");
  const cfw_activation act = activation_of(cfg);
  cfw_solve_report rep{};
  json report = {{"version", cfw_version()}, {"command", "fit1d"}, {"config", cfg}};
  if (pop) {
    const Distribution dist = parse_dist(str(cfg, "dist"));
    check(cfw_solve_w2(dist.get(), act, &rep));
    report["source"] = "population";
  } else {
    const auto x = load_column(str(cfg, "data"), u64(cfg, "column"));
    cfw_kde* raw = nullptr;
    check(cfw_kde_fit(x.data(), x.size(), bandwidth_of(cfg), rule_of(cfg), &raw));
    const Kde kde(raw);
    double h = 0.0;
    check(cfw_kde_bandwidth(kde.get(), &h));
    check(cfw_solve_w2_empirical(x.data(), x.size(), kde.get(), act, &rep));
    report["source"] = "sample";
    report["sample_size"] = x.size();
    report["bandwidth"] = h;
  }
  report["theta1"] = rep.theta1;
  report["theta2"] = rep.theta2;
  report["branch"] = cfw_branch_name(rep.branch);
  report["objective"] = rep.objective;
  report["condition"] = rep.condition;
  std::cout << "theta1=" << fmt(rep.theta1) << " theta2=" << fmt(rep.theta2)
            << " branch=" << cfw_branch_name(rep.branch) << " objective=" << fmt(rep.objective)
            << "\n";
  if (has(cfg, "out")) {
    Output out(str(cfg, "out"));
    out.stream() << report.dump(2) << "\n";
    out.close();
  }
  return kExitOk;
}

int run_convergence(const json& cfg) {
  const std::string spec = str(cfg, "dist");
  const auto sizes = cfg.at("sizes").get<std::vector<std::uint64_t>>();
  const std::uint64_t trials = u64(cfg, "trials");
  if (sizes.empty()) usage_error("--sizes must not be empty");
  if (trials < 1) usage_error("--trials must be >= 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw CliError{kExitPrecondition, "sample sizes must be >= 2"};
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw CliError{kExitPrecondition, "sample sizes must be strictly ascending"};
    }
  }
  const Distribution dist = parse_dist(spec);
  cfw_solve_report pop{};
  check(cfw_solve_w2(dist.get(), CFW_ACT_LINEAR, &pop));
  const std::uint64_t seed = u64(cfg, "seed");
  const cfw_bandwidth_rule rule = rule_of(cfg);
  const double h = bandwidth_of(cfg);

  Output out(str(cfg, "out"));
  CsvWriter csv(out.stream(), header_line("convergence", cfg), {"dist", "M", "trial", "theta2_hat", "abs_err"});
  std::vector<double> x;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      x.resize(sizes[si]);
      check(cfw_distribution_sample(dist.get(), seed, si * trials + t, x.size(), x.data()));
      cfw_kde* raw = nullptr;
      check(cfw_kde_fit(x.data(), x.size(), h, rule, &raw));
      const Kde kde(raw);
      cfw_solve_report rep{};
      check(cfw_solve_w2_empirical(x.data(), x.size(), kde.get(), CFW_ACT_LINEAR, &rep));
      csv.row({spec, std::to_string(sizes[si]), std::to_string(t), fmt(rep.theta2),
               fmt(std::abs(rep.theta2 - pop.theta2))});
    }
  }
  out.close();
  return kExitOk;
}

int run_sgd_w1(const json& cfg, const CLI::App& sub) {
  const bool file = has(cfg, "data"), synth = has(cfg, "synthetic");
  if (file == synth) {
    std::cerr << sub.help() << "\n";
    usage_error("sgd-w1 needs exactly one data source: --data or --synthetic");
  }
  std::vector<double> x;
  if (file) {
    x = load_column(str(cfg, "data"), u64(cfg, "column"));
  } else {
    const Distribution dist = parse_dist(str(cfg, "synthetic"));
    x.resize(u64(cfg, "n"));
    check(cfw_distribution_sample(dist.get(), u64(cfg, "seed"), 0, x.size(), x.data()));
  }
  cfw_sgd_config c = cfw_sgd_config_default();
  c.learning_rate = dbl(cfg, "learning_rate");
  c.momentum = dbl(cfg, "momentum");
  c.batch_size = u64(cfg, "batch_size");
  c.iterations = u64(cfg, "iterations");
  c.seed = u64(cfg, "seed");
  c.theta1_init = dbl(cfg, "theta1_init");
  c.theta2_init = dbl(cfg, "theta2_init");
  c.activation = activation_of(cfg);
  c.bandwidth_rule = rule_of(cfg);
  c.bandwidth = bandwidth_of(cfg);
  double t1 = 0.0, t2 = 0.0;
  cfw_sgd_trace* raw = nullptr;
  check(cfw_fit_w1(x.data(), x.size(), &c, &t1, &t2, &raw));
  const Trace trace(raw);

  Output out(str(cfg, "out"));
  CsvWriter csv(out.stream(), header_line("sgd-w1", cfg), {"iteration", "theta1", "theta2", "residual_norm"});
  const std::size_t n = cfw_sgd_trace_length(trace.get());
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0, b = 0, r = 0;
    check(cfw_sgd_trace_step(trace.get(), i, &a, &b, &r));
    csv.row({std::to_string(i), fmt(a), fmt(b), fmt(r)});
  }
  out.close();
  if (out.to_file()) std::cout << "theta1=" << fmt(t1) << " theta2=" << fmt(t2) << "\n";
  return kExitOk;
}

std::size_t rank_for(const json& cfg, std::size_t d) {
  if (has(cfg, "r")) {
    const std::uint64_t r = u64(cfg, "r");
    if (r < 1 || r > d) throw CliError{kExitPrecondition, "--r must be in [1, d]"};
    return r;
  }
  const double f = dbl(cfg, "r_fraction");
  if (!(f > 0.0 && f <= 1.0)) usage_error("--r-fraction must be in (0, 1]");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(f * static_cast<double>(d))));
}

int run_sliced_compare(const json& cfg) {
  const bool file = has(cfg, "data");
  std::vector<std::uint64_t> dims = cfg.at("d").get<std::vector<std::uint64_t>>();
  if (!file && dims.empty()) usage_error("--d must not be empty");
  cfw_sliced_config sc = cfw_sliced_config_default();
  sc.n_projections = u64(cfg, "n_projections");
  sc.q = static_cast<int>(u64(cfg, "q"));
  sc.seed = u64(cfg, "seed");
  sc.threads = threads_of(cfg);
  if (sc.q != 1 && sc.q != 2) usage_error("--q must be 1 or 2");
  if (sc.n_projections < 1) usage_error("--n-projections must be >= 1");
  const bool timing = u64(cfg, "timing") != 0;

  std::vector<Samples> data;
  if (file) {
    cfw_sample_matrix* raw = nullptr;
    check(cfw_sample_matrix_read_csv(str(cfg, "data").c_str(), &raw));
    data.emplace_back(raw);
    std::size_t rows = 0, cols = 0;
    check(cfw_sample_matrix_shape(raw, &rows, &cols));
    dims.assign(1, cols);
  } else {
    for (std::uint64_t d : dims) {
      if (d < 1) throw CliError{kExitPrecondition, "d must be >= 1"};
      cfw_sample_matrix* raw = nullptr;
      check(cfw_sample_matrix_synthetic(str(cfg, "synthetic").c_str(), d, u64(cfg, "m"), sc.seed, &raw));
      data.emplace_back(raw);
    }
  }

  Output out(str(cfg, "out"));
  CsvWriter csv(out.stream(), header_line("sliced-compare", cfg),
                {"d", "r", "method", "q", "n_projections", "seed", "value", "stderr", "wall_ms",
                 "flops_note"});
  using clock = std::chrono::steady_clock;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::size_t d = dims[k];
    cfw_sample_matrix* mat = data[k].get();
    check(cfw_sample_matrix_center(mat));
    const std::size_t r_pca = rank_for(cfg, d);
    const std::size_t r_prop = has(cfg, "proposed_r") ? u64(cfg, "proposed_r") : d;
    if (r_prop < d) {
      throw CliError{kExitPrecondition, "--proposed-r must be >= d for the proposed generator"};
    }

    auto t0 = clock::now();
    double st = 0.0;
    check(cfw_sigma_tilde(mat, &st));
    cfw_linear_generator* gp = nullptr;
    check(cfw_optimal_theta_w2(d, r_prop, st, &gp));
    const Generator proposed(gp);
    const double ms_prop = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    t0 = clock::now();
    cfw_linear_generator* gr = nullptr;
    check(cfw_r_pca(mat, r_pca, &gr));
    const Generator pca(gr);
    const double ms_pca = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    const cfw_linear_generator* gens[] = {proposed.get(), pca.get()};
    double values[2], errors[2];
    check(cfw_sliced_wq(mat, gens, 2, &sc, values, errors));

    auto emit = [&](std::size_t r, const char* method, int i, double ms, const char* note) {
      csv.row({std::to_string(d), std::to_string(r), method, std::to_string(sc.q),
               std::to_string(sc.n_projections), std::to_string(sc.seed), fmt(values[i]),
               fmt(errors[i]), timing ? fmt(ms) : std::string(), note});
    };
    emit(r_prop, "proposed", 0, ms_prop, "O(Md) for sigma tilde");
    emit(r_pca, "r-pca", 1, ms_pca, "O(Md^2) covariance + O(d^3) eigendecomposition");
  }
  out.close();
  return kExitOk;
}

int run_sliced_bound(const json& cfg) {
  const auto dims = cfg.at("d").get<std::vector<std::uint64_t>>();
  const double sigma = dbl(cfg, "sigma");
  if (dims.empty()) usage_error("--d must not be empty");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) usage_error("--sigma must be >= 0");
  for (std::uint64_t d : dims) {
    if (d < 1) throw CliError{kExitPrecondition, "d must be >= 1"};
  }
  Output out(str(cfg, "out"));
  CsvWriter csv(out.stream(), header_line("sliced-bound", cfg), {"d", "g", "ub_value"});
  for (std::uint64_t d : dims) {
    double g = 0.0, ub = 0.0;
    check(cfw_gamma_ratio_sq(d, &g));
    check(cfw_ub_value(d, sigma, &ub));
    csv.row({std::to_string(d), fmt(g), fmt(ub)});
  }
  out.close();
  return kExitOk;
}

json default_sizes() {
  json a = json::array();
  for (std::uint64_t m : {1000, 2000, 5000, 10000, 20000, 50000}) a.push_back(m);
  return a;
}

json default_bound_dims() {
  json a = json::array();
  for (std::uint64_t d : {1, 2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 10000, 100000, 1000000}) {
    a.push_back(d);
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form Wasserstein GAN solvers and experiment runner"};
  app.set_version_flag("--version", std::string(cfw_version()));
  app.require_subcommand(1);

  const json null = nullptr;
  std::vector<Command> commands;
  commands.reserve(5);
  commands.emplace_back(app, "fit1d", "Optimal 1-D generator parameters for a law or a sample",
                        std::vector<Param>{
                            {"dist", Kind::String, null, "Population law, e.g. gaussian:0,1"},
                            {"data", Kind::String, null, "Sample CSV path"},
                            {"column", Kind::Uint, 0, "Column of the sample CSV"},
                            {"activation", Kind::String, "linear", "linear, sigmoid or relu"},
                            {"bandwidth", Kind::Double, null, "KDE bandwidth (overrides the rule)"},
                            {"bandwidth_rule", Kind::String, "silverman", "silverman or plugin"},
                        });
  commands.emplace_back(app, "convergence", "Empirical theta2 error against the population value",
                        std::vector<Param>{
                            {"dist", Kind::String, "gaussian:0,1", "Population law"},
                            {"sizes", Kind::UintList, default_sizes(), "Ascending sample sizes"},
                            {"trials", Kind::Uint, 20, "Trials per size"},
                            {"bandwidth", Kind::Double, null, "KDE bandwidth (overrides the rule)"},
                            {"bandwidth_rule", Kind::String, "plugin", "silverman or plugin"},
                        });
  commands.emplace_back(app, "sgd-w1", "Momentum SGD on the 1-D W1 objective",
                        std::vector<Param>{
                            {"data", Kind::String, null, "Sample CSV path"},
                            {"column", Kind::Uint, 0, "Column of the sample CSV"},
                            {"synthetic", Kind::String, null, "Law to sample, e.g. gaussian:1.5,2"},
                            {"n", Kind::Uint, 100000, "Synthetic sample size"},
                            {"learning_rate", Kind::Double, 0.01, "Step size"},
                            {"momentum", Kind::Double, 0.9, "Momentum coefficient"},
                            {"batch_size", Kind::Uint, 256, "Minibatch size"},
                            {"iterations", Kind::Uint, 5000, "Iterations"},
                            {"theta1_init", Kind::Double, 0.0, "Initial theta1"},
                            {"theta2_init", Kind::Double, 1.0, "Initial theta2 (> 0)"},
                            {"activation", Kind::String, "linear", "linear, sigmoid or relu"},
                            {"bandwidth", Kind::Double, null, "KDE bandwidth (overrides the rule)"},
                            {"bandwidth_rule", Kind::String, "silverman", "silverman or plugin"},
                        });
  json default_d = json::array({30});
  commands.emplace_back(app, "sliced-compare", "Sliced W_q of the closed-form and r-PCA generators",
                        std::vector<Param>{
                            {"d", Kind::UintList, default_d, "Dimensions"},
                            {"data", Kind::String, null, "Sample CSV path (replaces --d/--synthetic)"},
                            {"synthetic", Kind::String, "iid:laplace:0,0.7071067811865476",
                             "iid:<law>, ar:<phi>:gaussian or ar:<phi>:student:<dof>"},
                            {"m", Kind::Uint, 20000, "Synthetic sample count"},
                            {"r", Kind::Uint, null, "r-PCA rank (overrides --r-fraction)"},
                            {"r_fraction", Kind::Double, 2.0 / 3.0, "r-PCA rank as a fraction of d"},
                            {"proposed_r", Kind::Uint, null, "Columns of the proposed Theta (default d)"},
                            {"n_projections", Kind::Uint, 2000, "Random directions"},
                            {"q", Kind::Uint, 2, "Order of the distance (1 or 2)"},
                            {"timing", Kind::Uint, 0, "Fill wall_ms (1) or leave it empty (0)"},
                        });
  commands.emplace_back(app, "sliced-bound", "Upper bound of the sliced W2 objective against d",
                        std::vector<Param>{
                            {"d", Kind::UintList, default_bound_dims(), "Dimensions"},
                            {"sigma", Kind::Double, 1.0, "sigma tilde"},
                        });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (const Command& cmd : commands) {
    if (!cmd.app()->parsed()) continue;
    try {
      const json cfg = cmd.resolve();
      threads_of(cfg);
      if (cmd.name() == "fit1d") return run_fit1d(cfg);
      if (cmd.name() == "convergence") return run_convergence(cfg);
      if (cmd.name() == "sgd-w1") return run_sgd_w1(cfg, *cmd.app());
      if (cmd.name() == "sliced-compare") return run_sliced_compare(cfg);
      if (cmd.name() == "sliced-bound") return run_sliced_bound(cfg);
    } catch (const CliError& e) {
      std::cerr << "cfwgan " << cmd.name() << ": " << e.message << "\n";
      return e.code;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "cfwgan " << cmd.name() << ": bad configuration value: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}
