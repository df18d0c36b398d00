// lcmeasure: config-driven harness around the lc-measure library.
//
// Subcommands: jumps, ideal, lcv, verify-weights, extend, integrability.
// Reports are CSV with a leading comment block (tool version + config hash,
// never timestamps), so identical configs produce identical bytes; the
// thread count is an execution detail and is excluded from the hash.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcm/chart_io.hpp"
#include "lcm/errors.hpp"
#include "lcm/estimates.hpp"
#include "lcm/integrability.hpp"
#include "lcm/lcv.hpp"
#include "lcm/multiplier.hpp"
#include "lcm/weights.hpp"

namespace {

constexpr const char* kVersion = "lcmeasure 0.1.0";

constexpr int kExitPrecondition = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInequality = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Report {
 public:
  explicit Report(std::string config) : config_(std::move(config)) {}

  void comment(const std::string& line) { comments_.push_back(line); }
  void row(const std::string& line) { rows_.push_back(line); }

  void write(const std::string& out_path) const {
    std::ostringstream body;
    body << "# " << kVersion << "\n";
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, fnv1a(config_));
    body << "# config " << hash << "\n";
    for (const std::string& c : comments_) body << "# " << c << "\n";
    for (const std::string& r : rows_) body << r << "\n";
    if (out_path.empty() || out_path == "-") {
      std::cout << body.str();
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw lcm::ParseError(out_path + ": cannot open for writing");
    out << body.str();
  }

 private:
  std::string config_;
  std::vector<std::string> comments_;
  std::vector<std::string> rows_;
};

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("LCMEASURE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return flag_value;
}

lcm::SncChart load_valid_chart(const std::string& path) {
  lcm::SncChart chart = lcm::read_chart(path);
  const auto violations = lcm::validate_chart(chart);
  if (!violations.empty()) {
    std::ostringstream os;
    os << path << ": invalid chart:";
    for (const auto& v : violations) {
      os << " [";
      if (v.coordinate >= 0) os << "coordinate " << v.coordinate + 1 << ": ";
      os << v.message << "]";
    }
    throw lcm::PreconditionError(os.str());
  }
  return chart;
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::string join_ints_1based(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += " ";
    out += std::to_string(x + 1);
  }
  return out.empty() ? "-" : out;
}

struct CommonOpts {
  std::string chart_path;
  std::string out_path;
  int threads = 1;
};

int cmd_jumps(const CommonOpts& common, const std::string& m_max_text) {
  lcm::SncChart chart = load_valid_chart(common.chart_path);
  const lcm::Rat m_max =
      m_max_text.empty() ? chart.m1 : lcm::Rat::parse(m_max_text);
  const lcm::JumpReport report = lcm::jumping_numbers(chart, m_max);
  if (!report.m1_is_jump)
    throw lcm::PreconditionError(
        common.chart_path +
        ": m1 is not a jumping number of the family m -> I(phi_L + m*psi)");
  if (!report.interior_jumps.empty())
    throw lcm::PreconditionError(
        common.chart_path +
        ": the ideal family is not constant on [m0, m1): jump at " +
        report.interior_jumps.front().str());

  Report out("jumps chart=" + common.chart_path + " m_max=" + m_max.str());
  out.comment("S_components (1-based) = " + join_ints_1based(report.S_components));
  out.comment(std::string("reduced = ") + (report.reduced ? "true" : "false"));
  out.row("jump");
  for (const lcm::Rat& j : report.jumps) out.row(j.str());
  out.write(common.out_path);
  return 0;
}

int cmd_ideal(const CommonOpts& common, const std::string& m_text) {
  lcm::SncChart chart = load_valid_chart(common.chart_path);
  const lcm::Rat m = m_text.empty() ? chart.m0 : lcm::Rat::parse(m_text);
  const auto gen = lcm::ideal_generator(chart, m);
  Report out("ideal chart=" + common.chart_path + " m=" + m.str());
  out.row("coordinate,generator_exponent");
  for (std::size_t j = 0; j < gen.size(); ++j)
    out.row(std::to_string(j + 1) + "," + std::to_string(gen[j]));
  out.write(common.out_path);
  return 0;
}

int cmd_lcv(const CommonOpts& common, int section_index,
            const std::string& schedule_text, lcm::QuadratureSpec spec) {
  lcm::SncChart chart = load_valid_chart(common.chart_path);
  if (section_index < 0 ||
      section_index >= static_cast<int>(chart.sections.size()))
    throw lcm::PreconditionError(common.chart_path + ": no section with index " +
                                 std::to_string(section_index));
  if (!schedule_text.empty()) spec.eps_schedule = parse_schedule(schedule_text);
  spec.threads = common.threads;
  spec.validate();
  const lcm::MonomialSection& f =
      chart.sections[static_cast<std::size_t>(section_index)];

  std::ostringstream cfg;
  cfg << "lcv chart=" << common.chart_path << " section=" << section_index;
  for (double e : spec.eps_schedule) cfg << " eps=" << fmt(e);
  Report out(cfg.str());
  out.row("sigma,class,value,eps,raw_integral,residual");
  const auto table = lcm::trichotomy_table(chart, f, spec);
  for (const auto& row : table) {
    const lcm::MeasureResult& r = row.result;
    const std::string value = r.value ? fmt(*r.value) : "";
    for (std::size_t i = 0; i < r.diagnostics.eps.size(); ++i) {
      out.row(std::to_string(row.sigma) + "," + lcm::to_string(r.cls) + "," +
              value + "," + fmt(r.diagnostics.eps[i]) + "," +
              fmt(r.diagnostics.raw[i]) + "," +
              fmt(r.diagnostics.extrapolation_residual));
    }
  }
  out.write(common.out_path);
  return 0;
}

int cmd_verify_weights(const CommonOpts& common, lcm::AuxParams params,
                       const std::string& grid_text) {
  // Grid of |t| values, log-spaced; default starts at the normalisation floor
  // for (sigma, ell, delta) and spans six decades.
  double grid_lo = 0.0, grid_hi = 0.0;
  int grid_n = 2001;
  if (!grid_text.empty()) {
    const auto parts = parse_schedule(grid_text);
    if (parts.size() != 3)
      throw lcm::PreconditionError("--grid expects lo,hi,count");
    grid_lo = parts[0];
    grid_hi = parts[1];
    grid_n = static_cast<int>(parts[2]);
  }
  lcm::SncChart trivial;
  trivial.n = 1;
  trivial.radii = {0.5};
  trivial.phi_L.coeffs = {lcm::Rat{0}};
  trivial.psi.coeffs = {lcm::Rat{0}};
  if (grid_lo <= 0.0) {
    const lcm::PsiNormalization norm = lcm::normalize_psi(trivial, params);
    grid_lo = norm.s_required;
    grid_hi = grid_lo * 1e6;
  }
  if (!(grid_hi > grid_lo) || grid_n < 2)
    throw lcm::PreconditionError("--grid expects lo < hi and count >= 2");

  std::vector<double> t_grid;
  t_grid.reserve(static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) {
    const double frac = static_cast<double>(i) / (grid_n - 1);
    t_grid.push_back(-grid_lo * std::pow(grid_hi / grid_lo, frac));
  }
  const lcm::BudgetReport report = lcm::budget_check(params, t_grid);

  std::ostringstream cfg;
  cfg << "verify-weights sigma=" << params.sigma << " ell=" << fmt(params.ell)
      << " delta=" << fmt(params.delta) << " eps=" << fmt(params.eps)
      << " A=" << fmt(params.A) << " B=" << fmt(params.B)
      << " grid=" << fmt(grid_lo) << "," << fmt(grid_hi) << "," << grid_n;
  Report out(cfg.str());
  out.row("inequality,margin,witness_t,pass");
  for (const lcm::BudgetItem& item : report.items)
    out.row(item.name + "," + fmt(item.margin) + "," + fmt(item.witness) + "," +
            (item.pass ? "1" : "0"));
  out.write(common.out_path);
  return report.all_pass ? 0 : kExitInequality;
}

int cmd_extend(const CommonOpts& common, lcm::AuxParams params,
               lcm::QuadratureSpec spec, const std::string& schedule_text) {
  lcm::SncChart chart = load_valid_chart(common.chart_path);
  if (chart.sections.empty())
    throw lcm::PreconditionError(common.chart_path + ": no sections to extend");
  if (!schedule_text.empty()) spec.eps_schedule = parse_schedule(schedule_text);
  spec.threads = common.threads;
  lcm::MultiMonomialSection f;
  f.terms = chart.sections;

  const lcm::ExtensionReport report =
      lcm::check_main_estimate(chart, f, params, spec);

  std::ostringstream cfg;
  cfg << "extend chart=" << common.chart_path << " ell=" << fmt(params.ell)
      << " delta=" << fmt(params.delta) << " eps=" << fmt(params.eps);
  Report out(cfg.str());
  out.comment("psi_shift_used = " + fmt(report.psi_shift_used));
  if (!report.note.empty()) out.comment(report.note);
  out.row("sigma,lhs,rhs,margin,tolerance,pass");
  bool all_pass = true;
  for (const lcm::StageReport& stage : report.stages) {
    all_pass &= stage.pass;
    out.row(std::to_string(stage.sigma) + "," + fmt(stage.lhs) + "," +
            fmt(stage.rhs) + "," + fmt(stage.margin) + "," +
            fmt(stage.tolerance) + "," + (stage.pass ? "1" : "0"));
  }
  out.write(common.out_path);
  return all_pass ? 0 : kExitInequality;
}

int cmd_integrability(const CommonOpts& common, const std::string& r0_text,
                      const std::string& schedule_text,
                      const std::string& ladder_text,
                      const std::vector<std::string>& member_text, int sigma,
                      double eps, double ell) {
  std::vector<double> r0s = r0_text.empty()
                                ? std::vector<double>{std::exp(-0.5),
                                                      std::exp(-1.0),
                                                      std::exp(-2.0)}
                                : parse_schedule(r0_text);
  std::vector<double> schedule = schedule_text.empty()
                                     ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                                     : parse_schedule(schedule_text);

  std::ostringstream cfg;
  cfg << "integrability r0=" << r0_text << " eps=" << schedule_text
      << " ladder=" << ladder_text << " sigma=" << sigma;
  for (const std::string& m : member_text) cfg << " member=" << m;
  if (!common.chart_path.empty()) cfg << " chart=" << common.chart_path;
  Report out(cfg.str());
  out.row("check,arg1,arg2,arg3,result,extra");

  for (double r0 : r0s) {
    const lcm::LogPoleLimit pole = lcm::log_pole_limit(r0, schedule);
    out.row("log_pole_limit," + fmt(r0) + ",,," + fmt(pole.limit) + "," +
            fmt(pole.residual));
  }
  for (const std::string& m : member_text) {
    const auto parts = parse_schedule(m);
    if (parts.size() != 3)
      throw lcm::PreconditionError("--member expects a,p,s");
    const auto res = lcm::log_weight_membership(static_cast<int>(parts[0]),
                                                parts[1], parts[2], 0.5);
    out.row("log_weight_membership," + fmt(parts[0]) + "," + fmt(parts[1]) +
            "," + fmt(parts[2]) + "," + (res.finite ? "finite" : "divergent") +
            "," + fmt(res.value));
  }
  if (!ladder_text.empty()) {
    const auto parts = parse_schedule(ladder_text);
    if (parts.size() != 2)
      throw lcm::PreconditionError("--ladder expects s,delta");
    const lcm::ContinuationLadder ladder =
        lcm::continuation_ladder(parts[0], parts[1]);
    std::string exps;
    for (double e : ladder.exponents) {
      if (!exps.empty()) exps += " ";
      exps += fmt(e);
    }
    out.row("continuation_ladder," + fmt(parts[0]) + "," + fmt(parts[1]) +
            ",," + std::to_string(ladder.steps()) + "," + exps);
  }
  if (!common.chart_path.empty()) {
    lcm::SncChart chart = load_valid_chart(common.chart_path);
    const auto rep = lcm::hormander_weight_check(chart, sigma, eps, ell);
    out.row("hormander_weight," + std::to_string(sigma) + "," + fmt(eps) + "," +
            fmt(ell) + "," + fmt(rep.c_gradient) + "," + fmt(rep.witness_s));
  }
  out.write(common.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lc-measure toolkit: jumping numbers, lc-measure limits, weight\n"
               "inequality budgets and extension-estimate checks on polydisc\n"
               "model charts"};
  app.require_subcommand(1);

  CommonOpts common;
  int threads_flag = 1;
  std::string m_max_text, m_text, schedule_text, grid_text, r0_text, ladder_text;
  std::vector<std::string> member_text;
  int section_index = 0;
  lcm::QuadratureSpec spec;
  lcm::AuxParams params;

  auto add_common = [&](CLI::App* cmd, bool needs_chart) {
    if (needs_chart)
      cmd->add_option("--chart", common.chart_path, "chart JSON file")->required();
    else
      cmd->add_option("--chart", common.chart_path, "chart JSON file");
    cmd->add_option("--out", common.out_path, "output CSV path (default stdout)");
    cmd->add_option("--threads", threads_flag,
                    "worker threads (LCMEASURE_THREADS overrides)");
  };
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--sigma", params.sigma, "weight family index (>= 1)");
    cmd->add_option("--ell", params.ell, "normalisation constant ell");
    cmd->add_option("--delta", params.delta, "curvature budget delta");
    cmd->add_option("--eps", params.eps, "family parameter eps");
    cmd->add_option("--A", params.A, "cutoff plateau edge A");
    cmd->add_option("--B", params.B, "cutoff support edge B");
    cmd->add_option("--eps0", params.eps0, "cutoff slope slack");
  };

  CLI::App* jumps = app.add_subcommand("jumps", "exact jumping numbers");
  add_common(jumps, true);
  jumps->add_option("--m-max", m_max_text, "scan limit (rational, default m1)");

  CLI::App* ideal = app.add_subcommand("ideal", "multiplier ideal generator");
  add_common(ideal, true);
  ideal->add_option("--m", m_text, "weight multiple m (rational, default m0)");

  CLI::App* lcv = app.add_subcommand("lcv", "lc-measure trichotomy table");
  add_common(lcv, true);
  lcv->add_option("--section", section_index, "section index (default 0)");
  lcv->add_option("--eps-schedule", schedule_text, "comma list, decreasing");
  lcv->add_option("--nodes", spec.nodes_per_axis, "quadrature nodes per panel");
  lcv->add_option("--abs-tol", spec.abs_tol, "zero-classification floor");
  lcv->add_option("--rel-tol", spec.rel_tol, "relative tolerance");
  lcv->add_option("--divergence-threshold", spec.divergence_threshold,
                  "growth ratio flagged as divergent");
  lcv->add_option("--t-min", spec.t_min, "log-radius truncation depth");

  CLI::App* verify = app.add_subcommand("verify-weights",
                                        "weight-inequality margin table");
  add_common(verify, false);
  add_params(verify);
  verify->add_option("--grid", grid_text, "|t| grid as lo,hi,count (log-spaced)");

  CLI::App* extend = app.add_subcommand("extend", "extension-estimate check");
  add_common(extend, true);
  add_params(extend);
  extend->add_option("--eps-schedule", schedule_text, "comma list, decreasing");

  CLI::App* integ = app.add_subcommand("integrability",
                                       "continuation-lemma integrals");
  add_common(integ, false);
  integ->add_option("--pole-r0", r0_text, "comma list of disc radii");
  integ->add_option("--eps-schedule", schedule_text, "comma list, decreasing");
  integ->add_option("--ladder", ladder_text, "s,delta for the exponent descent");
  integ->add_option("--member", member_text, "a,p,s membership probe (repeatable)");
  integ->add_option("--sigma", params.sigma, "sigma for the weight curvature check");
  integ->add_option("--eps", params.eps, "eps for the weight curvature check");
  integ->add_option("--ell", params.ell, "ell for the weight curvature check");

  CLI11_PARSE(app, argc, argv);
  common.threads = resolve_threads(threads_flag);

  try {
    if (jumps->parsed()) return cmd_jumps(common, m_max_text);
    if (ideal->parsed()) return cmd_ideal(common, m_text);
    if (lcv->parsed()) return cmd_lcv(common, section_index, schedule_text, spec);
    if (verify->parsed()) return cmd_verify_weights(common, params, grid_text);
    if (extend->parsed()) return cmd_extend(common, params, spec, schedule_text);
    if (integ->parsed())
      return cmd_integrability(common, r0_text, schedule_text, ladder_text,
                               member_text, params.sigma, params.eps, params.ell);
  } catch (const lcm::InequalityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInequality;
  } catch (const lcm::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const lcm::InconclusiveError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const lcm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const lcm::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
