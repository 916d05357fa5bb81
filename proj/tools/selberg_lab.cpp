#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "selberg/errors.hpp"
#include "selberg/h_transform.hpp"
#include "selberg/oscillatory.hpp"
#include "selberg/series_io.hpp"
#include "selberg/smoothed_eval.hpp"

using namespace selberg;
using nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Config {
  std::string spec_path;
  std::string output_path;
  std::string s_text;
  std::optional<double> T, alpha, p, delta;
  double tolerance = 1e-6;
  int n_alpha = 256;
  unsigned threads = 0;
  std::string mode;
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts "a", "a+bi", "a-bi", "bi" with optional spaces.
Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  static const std::regex full(R"(^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)(?:([+-](?:[0-9.]+(?:[eE][+-]?[0-9]+)?)?)[ij])?$)");
  static const std::regex imag_only(R"(^([+-]?(?:[0-9.]+(?:[eE][+-]?[0-9]+)?)?)[ij]$)");
  std::smatch m;
  auto coef = [](const std::string& c) {
    if (c.empty() || c == "+") return 1.0;
    if (c == "-") return -1.0;
    return std::stod(c);
  };
  try {
    if (std::regex_match(s, m, full))
      return {std::stod(m[1]), m[2].matched ? coef(m[2]) : 0.0};
    if (std::regex_match(s, m, imag_only)) return {0.0, coef(m[1])};
  } catch (const std::exception&) {
  }
  throw ParseError("cannot parse complex number '" + text + "'");
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

ordered_json invariants_json(const SeriesSpec& spec) {
  const InvariantSet inv = invariants(spec);
  ordered_json j;
  j["schema"] = 1;
  j["spec"] = spec.name;
  j["d"] = inv.d;
  j["A"] = inv.A;
  j["B"] = inv.B;
  j["C"] = inv.C;
  j["D"] = inv.D;
  j["q"] = inv.q;
  return j;
}

// Validates every override before any computation.
void check_overrides(const Config& cfg) {
  if (cfg.T && !(*cfg.T > 1.0)) throw ValidationError("--T must exceed 1");
  if (cfg.T && *cfg.T > 512.0) throw ValidationError("--T must not exceed 512");
  if (cfg.alpha && !(*cfg.alpha > 0.0)) throw ValidationError("--alpha must be positive");
  if (cfg.p && !(*cfg.p > 0.0)) throw ValidationError("--p must be positive");
  if (cfg.delta && !(*cfg.delta > 0.0)) throw ValidationError("--delta must be positive");
  if (!(cfg.tolerance > 0.0)) throw ValidationError("--tolerance must be positive");
  if (cfg.n_alpha < 64) throw ValidationError("--n_alpha must be at least 64");
}

HParams params_for(const Config& cfg, const SeriesSpec& spec, double default_T) {
  const double T = cfg.T.value_or(default_T);
  HParams hp = choose_parameters(degree(spec.gamma), spec.sigma_a, T, cfg.p.value_or(10.0),
                                 cfg.delta);
  if (cfg.alpha) hp.alpha = *cfg.alpha;
  return hp;
}

ordered_json params_json(const HParams& hp) {
  ordered_json j;
  j["alpha"] = hp.alpha;
  j["T"] = hp.T;
  j["p"] = hp.p;
  j["delta"] = hp.delta;
  j["rho1"] = hp.rho1;
  j["rho1_formula"] = hp.rho1_formula;
  j["eps"] = hp.eps;
  j["X1"] = hp.X1;
  j["window"] = {hp.window.k_lo * kPi * hp.alpha * hp.T, hp.window.k_hi * kPi * hp.alpha * hp.T};
  return j;
}

std::string csv_header() { return "alpha,T,re_H,im_H,mode\n"; }

std::string csv_row(double alpha, double T, Complex H, HMode mode) {
  return fmt17(alpha) + ',' + fmt17(T) + ',' + fmt17(H.real()) + ',' + fmt17(H.imag()) + ',' +
         hmode_name(mode) + '\n';
}

int cmd_invariants(const Config& cfg) {
  emit(invariants_json(load_spec(cfg.spec_path)));
  return 0;
}

int cmd_eval(const Config& cfg) {
  const SeriesSpec spec = load_spec(cfg.spec_path);
  const Complex s = parse_complex(cfg.s_text);
  const Complex v = evaluate(spec, s);
  ordered_json j;
  j["schema"] = 1;
  j["spec"] = spec.name;
  j["s"] = {s.real(), s.imag()};
  j["re"] = v.real();
  j["im"] = v.imag();
  emit(j);
  return 0;
}

int cmd_fe_check(const Config& cfg) {
  const SeriesSpec spec = load_spec(cfg.spec_path);
  ordered_json points = ordered_json::array();
  double worst = 0.0;
  for (const Complex s : fe_grid()) {
    const double r = fe_residual(spec, s);
    worst = std::max(worst, r);
    points.push_back({{"s", {s.real(), s.imag()}}, {"residual", r}});
  }
  ordered_json j;
  j["schema"] = 1;
  j["spec"] = spec.name;
  j["max_residual"] = worst;
  j["points"] = points;
  emit(j);
  return 0;
}

int cmd_stationary() {
  const auto corpus = stationary_corpus(kCorpusSeed, 50);
  int violations = 0;
  double worst_ratio = 0.0;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto r = stationary_phase_eval(corpus[i]);
    const Complex oracle = quadrature_oracle(corpus[i], 1e-10);
    const double err = std::abs(oracle - r.main);
    const double ratio = err / r.error_bound;
    worst_ratio = std::max(worst_ratio, ratio);
    if (err > r.error_bound) ++violations;
    rows.push_back({{"index", i}, {"error", err}, {"bound", r.error_bound}});
  }
  ordered_json j;
  j["schema"] = 1;
  j["seed"] = kCorpusSeed;
  j["problems"] = corpus.size();
  j["violations"] = violations;
  j["max_error_over_bound"] = worst_ratio;
  j["C1"] = kStationaryC1;
  j["C2"] = kStationaryC2;
  j["rows"] = rows;
  emit(j);
  return violations == 0 ? 0 : kExitNumeric;
}

std::vector<HMode> modes_for(const std::string& mode, std::vector<HMode> all) {
  if (mode.empty() || mode == "all") return all;
  return {parse_hmode(mode)};
}

int cmd_htransform(const Config& cfg) {
  const SeriesSpec spec = load_spec(cfg.spec_path);
  const HParams hp = params_for(cfg, spec, 32.0);
  HOptions opts;
  opts.line.threads = cfg.threads;
  const auto modes = modes_for(cfg.mode, {HMode::Direct, HMode::MainTerm, HMode::Second});

  ordered_json values;
  std::string csv = csv_header();
  std::optional<Complex> direct, second, main;
  for (const HMode m : modes) {
    Complex H;
    if (m == HMode::Direct) direct = H = h_direct(spec, hp, cfg.tolerance, opts);
    if (m == HMode::Second) second = H = h_second_method(spec, hp, cfg.tolerance, opts);
    if (m == HMode::MainTerm) main = H = h_main_term(spec, hp);
    values[hmode_name(m)] = {H.real(), H.imag()};
    csv += csv_row(hp.alpha, hp.T, H, m);
  }
  ordered_json residuals, envelopes;
  if (direct && main) residuals["direct_minus_main_term"] = std::abs(*direct - *main);
  if (direct && second) residuals["direct_minus_second"] = std::abs(*direct - *second);
  if (direct && second)
    envelopes["rewrite_identity"] = 10.0 * cfg.tolerance * (1.0 + std::abs(*direct));
  envelopes["sanity"] = 10.0 * std::sqrt(3.0 * hp.T);
  envelopes["l2_norm"] = l2_norm(spec, hp.T);

  ordered_json j;
  j["schema"] = 1;
  j["spec"] = spec.name;
  j["parameters"] = params_json(hp);
  j["quad_tol"] = cfg.tolerance;
  j["H"] = values;
  j["residuals"] = residuals;
  j["envelopes"] = envelopes;
  if (!cfg.output_path.empty()) write_file(cfg.output_path, csv);
  emit(j);
  return 0;
}

int cmd_l2(const Config& cfg) {
  const SeriesSpec spec = load_spec(cfg.spec_path);
  const HParams hp = params_for(cfg, spec, 64.0);
  HOptions opts;
  opts.line.threads = cfg.threads;
  const auto modes = modes_for(cfg.mode, {HMode::MainTerm, HMode::Direct});
  const auto alphas = alpha_grid(hp, cfg.n_alpha);

  const double reference = l2_reference(spec, hp);
  ordered_json table = ordered_json::array();
  std::string csv = csv_header();
  std::printf("%-10s %24s %14s\n", "mode", "l2", "rel_to_ref");
  for (const HMode m : modes) {
    const auto H = h_batch(spec, hp, alphas, m, opts);
    double acc = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
      acc += std::norm(H[i]);
      csv += csv_row(alphas[i], hp.T, H[i], m);
    }
    const double l2 = std::sqrt(acc / (2.0 * kPi * cfg.n_alpha));
    const double rel = reference > 0.0 ? l2 / reference - 1.0 : l2;
    std::printf("%-10s %24s %14.6e\n", hmode_name(m).c_str(), fmt17(l2).c_str(), rel);
    table.push_back({{"mode", hmode_name(m)}, {"l2", l2}, {"relative_to_reference", rel}});
  }
  std::printf("%-10s %24s\n", "reference", fmt17(reference).c_str());
  if (!cfg.output_path.empty()) {
    write_file(cfg.output_path, csv);
    ordered_json j;
    j["schema"] = 1;
    j["spec"] = spec.name;
    j["parameters"] = params_json(hp);
    j["n_alpha"] = cfg.n_alpha;
    j["reference"] = reference;
    j["l2_norm"] = l2_norm(spec, hp.T);
    j["results"] = table;
    write_file(cfg.output_path + ".json", j.dump(2) + '\n');
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothed Dirichlet series evaluation and H(alpha, T) transforms"};
  app.require_subcommand(1);
  Config cfg;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_path, "spec file or builtin:NAME")->required();
  };
  auto add_h = [&](CLI::App* sub) {
    sub->add_option("--T", cfg.T, "window parameter T");
    sub->add_option("--alpha", cfg.alpha, "alpha (default T^delta)");
    sub->add_option("--p", cfg.p, "smoothing sharpness of the main term");
    sub->add_option("--delta", cfg.delta, "override delta");
    sub->add_option("--tolerance", cfg.tolerance, "quadrature tolerance");
    sub->add_option("--threads", cfg.threads, "worker threads (0: SELBERG_LAB_THREADS or 1)");
    sub->add_option("--output,-o", cfg.output_path, "CSV output path");
  };

  auto* degree_cmd = app.add_subcommand("degree", "print the invariant set");
  auto* inv_cmd = app.add_subcommand("invariants", "print the invariant set");
  auto* eval_cmd = app.add_subcommand("eval", "evaluate F(s)");
  auto* fe_cmd = app.add_subcommand("fe-check", "functional-equation residuals");
  auto* st_cmd = app.add_subcommand("stationary", "stationary-phase corpus check");
  auto* h_cmd = app.add_subcommand("htransform", "H(alpha, T) by each method");
  auto* l2_cmd = app.add_subcommand("l2", "l2 recovery over the alpha window");
  for (auto* sub : {degree_cmd, inv_cmd, eval_cmd, fe_cmd, h_cmd, l2_cmd}) add_spec(sub);
  eval_cmd->add_option("--s", cfg.s_text, "point, e.g. 2+0i")->required();
  add_h(h_cmd);
  h_cmd->add_option("--mode", cfg.mode, "direct, second, main_term or all");
  add_h(l2_cmd);
  l2_cmd->add_option("--n_alpha", cfg.n_alpha, "alpha nodes (>= 64)");
  l2_cmd->add_option("--mode", cfg.mode, "direct, main_term or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    check_overrides(cfg);
    if (!cfg.mode.empty() && cfg.mode != "all") parse_hmode(cfg.mode);
    if (degree_cmd->parsed() || inv_cmd->parsed()) return cmd_invariants(cfg);
    if (eval_cmd->parsed()) return cmd_eval(cfg);
    if (fe_cmd->parsed()) return cmd_fe_check(cfg);
    if (st_cmd->parsed()) return cmd_stationary();
    if (h_cmd->parsed()) return cmd_htransform(cfg);
    if (l2_cmd->parsed()) return cmd_l2(cfg);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
