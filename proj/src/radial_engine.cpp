#include "lcm/radial_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lcm/errors.hpp"
#include "lcm/quadrature.hpp"

namespace lcm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailRatio = 0.3;  // geometric panel ratio toward u = 0

int head_panels(int level) { return 3 + level; }
int panel_order(const QuadratureSpec& spec, int level) {
  return spec.nodes_per_axis + 2 * level;
}
int tail_order(const QuadratureSpec& spec, int level) {
  return std::max(6, spec.nodes_per_axis / 2) + 2 * level;
}

}  // namespace

double PowerKernel::phi(double s) const { return std::exp(-q_ * std::log(s)); }

double PowerKernel::moment(int k, double s) const {
  if (moment_divergent(k)) return kInf;
  // int_0^inf Y^{k-1} (s+Y)^{-q} dY = s^{k-q} Gamma(k) Gamma(q-k) / Gamma(q)
  return std::exp((k - q_) * std::log(s) + std::lgamma(static_cast<double>(k)) +
                  std::lgamma(q_ - k) - std::lgamma(q_));
}

double EstimateWeightKernel::phi(double s) const {
  const double lg = sigma_ * std::log(ell_ * s);
  return std::exp(-sigma_ * std::log(s)) / (lg * lg + 1.0);
}

double EstimateWeightKernel::moment(int k, double s) const {
  if (moment_divergent(k)) return kInf;
  // Substituting Y = s(e^v - 1):
  //   J_k(s) = s^{k-sigma} int_0^inf (1-e^{-v})^{k-1} e^{(k-sigma)v}
  //                         / ((sigma (v+c))^2 + 1) dv,   c = log(ell s).
  const double c = std::log(ell_ * s);
  const int order = 14;
  std::vector<std::pair<double, double>> nodes;
  double value = 0.0;

  if (k < sigma_) {
    const double v1 = 40.0 / (sigma_ - k);
    for (int p = 0; p < 8; ++p)
      append_gl_panel(v1 * p / 8.0, v1 * (p + 1) / 8.0, order, nodes);
    for (auto [v, w] : nodes) {
      const double base = k > 1 ? std::pow(1.0 - std::exp(-v), k - 1) : 1.0;
      const double lg = sigma_ * (v + c);
      value += w * base * std::exp((k - sigma_) * v) / (lg * lg + 1.0);
    }
  } else {  // k == sigma: power decay is gone, only the log^2 weight remains
    const double v0 = std::max(8.0, 1.0 - c);
    for (int p = 0; p < 8; ++p)
      append_gl_panel(v0 * p / 8.0, v0 * (p + 1) / 8.0, order, nodes);
    for (auto [v, w] : nodes) {
      const double base = k > 1 ? std::pow(1.0 - std::exp(-v), k - 1) : 1.0;
      const double lg = sigma_ * (v + c);
      value += w * base / (lg * lg + 1.0);
    }
    // Map x = 1/(v+c); the integrand becomes (1-e^{c-1/x})^{k-1}/(sigma^2+x^2),
    // regular down to x = 0.
    nodes.clear();
    const double x0 = 1.0 / (v0 + c);
    for (int p = 0; p < 4; ++p)
      append_gl_panel(x0 * p / 4.0, x0 * (p + 1) / 4.0, order, nodes);
    for (auto [x, w] : nodes) {
      double base = 1.0;
      if (k > 1) {
        const double t = c - 1.0 / x;  // -inf at x -> 0
        base = std::pow(1.0 - std::exp(t), k - 1);
      }
      value += w * base / (sigma_ * static_cast<double>(sigma_) + x * x);
    }
  }
  return std::exp((k - sigma_) * std::log(s)) * value;
}

namespace {

// Node list over the cutoff transition zone t in [log(u_max/4), log(u_max)].
void build_head(double u_max, double support_radius, double defect, int panels,
                int order, std::vector<std::pair<double, double>>& out) {
  const double t_lo = std::log(u_max / 4.0);
  const double t_hi = std::log(u_max);
  std::vector<std::pair<double, double>> raw;
  for (int p = 0; p < panels; ++p)
    append_gl_panel(t_lo + (t_hi - t_lo) * p / panels,
                    t_lo + (t_hi - t_lo) * (p + 1) / panels, order, raw);
  out.reserve(raw.size());
  for (auto [t, w] : raw) {
    const double chi = bump(std::sqrt(std::exp(t)), support_radius);
    out.emplace_back(t, w * chi * chi * std::exp(defect * t));
  }
}

// Tail of a decaying axis in the variable w = e^{e t} (i.e. w = u^e), with
// geometric panels toward w = 0; the cutoff is identically 1 there.  The
// panels stop at the deeper of the relative-mass floor (the skipped tail
// carries less than ~1e-14 of the axis mass) and the configured t_min depth.
void build_tail(double u_max, double defect, double t_min, int level,
                int order, std::vector<std::pair<double, double>>& out) {
  const double tau = std::log(u_max / 4.0);
  const double w_top = std::exp(defect * tau);
  const double floor_w =
      std::min(std::exp(defect * t_min),
               w_top * 1e-14 * std::pow(0.1, level));
  std::vector<std::pair<double, double>> raw;
  double hi = w_top;
  for (int p = 0; p < 96 && hi > floor_w; ++p) {
    const double lo = hi * kTailRatio;
    append_gl_panel(lo, hi, order, raw);
    hi = lo;
  }
  out.reserve(raw.size());
  for (auto [w, gw] : raw)
    out.emplace_back(std::log(w) / defect, gw / defect);
}

}  // namespace

RadialProblem build_radial_problem(const SncChart& chart, const MonomialSection& f,
                                   const QuadratureSpec& spec, int level) {
  const int order = panel_order(spec, level);
  RadialProblem problem;
  problem.s_base = -chart.psi.shift;
  const double m1 = chart.m1.to_double();
  problem.prefactor = f.amplitude * f.amplitude *
                      std::exp(-chart.phi_L.shift - m1 * chart.psi.shift) *
                      std::pow(2.0 * std::numbers::pi, chart.n);

  const std::vector<Rat> defects = ideal_defects(chart, f, chart.m1);
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat nu_exact = chart.psi.coeffs[idx];
    const Rat e_exact = defects[idx];
    const double support = f.support_radius[idx];
    const double u_max = support * support;

    if (nu_exact.is_zero()) {
      if (e_exact <= Rat{0}) {
        problem.divergent_power = true;  // int u^{e-1} du with e <= 0
        continue;
      }
      problem.separable *=
          transverse_factor(e_exact.to_double(), support, spec, level) /
          (2.0 * std::numbers::pi);  // the 2 pi lives in the prefactor
      continue;
    }

    if (e_exact < Rat{0}) {
      problem.divergent_power = true;
      continue;
    }

    RadialAxis axis;
    axis.nu = nu_exact.to_double();
    axis.defect = e_exact.to_double();
    axis.tau_abs = -std::log(u_max / 4.0);
    build_head(u_max, support, axis.defect, head_panels(level), order, axis.head);
    if (e_exact.is_zero()) {
      problem.z.push_back(static_cast<int>(problem.axes.size()));
    } else {
      build_tail(u_max, axis.defect, spec.t_min, 4 * level, order, axis.tail);
    }
    problem.axes.push_back(std::move(axis));
  }
  return problem;
}

namespace {

struct TermAxis {
  const std::vector<std::pair<double, double>>* head;
  const std::vector<std::pair<double, double>>* tail;  // may be null
  double nu;
  std::size_t count;
};

}  // namespace

double integrate_radial(const RadialProblem& problem, const RadialKernel& kernel,
                        int threads) {
  if (problem.divergent_power) return kInf;
  const std::size_t zn = problem.z.size();
  if (!problem.z.empty() &&
      kernel.moment_divergent(static_cast<int>(zn)))
    return kInf;

  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << zn); ++mask) {
    const int k = __builtin_popcount(mask);
    double s_off = problem.s_base;
    double nu_prod = 1.0;
    std::vector<bool> in_tail(problem.axes.size(), false);
    for (std::size_t zi = 0; zi < zn; ++zi) {
      if (mask & (1u << zi)) {
        const RadialAxis& ax = problem.axes[static_cast<std::size_t>(problem.z[zi])];
        s_off += ax.nu * ax.tau_abs;
        nu_prod *= ax.nu;
        in_tail[static_cast<std::size_t>(problem.z[zi])] = true;
      }
    }

    std::vector<TermAxis> axes;
    std::size_t cells = 1;
    for (std::size_t a = 0; a < problem.axes.size(); ++a) {
      if (in_tail[a]) continue;
      const RadialAxis& ax = problem.axes[a];
      TermAxis ta;
      ta.head = &ax.head;
      ta.tail = ax.tail.empty() ? nullptr : &ax.tail;
      ta.nu = ax.nu;
      ta.count = ax.head.size() + ax.tail.size();
      cells *= ta.count;
      axes.push_back(ta);
    }

    const double moment_scale =
        k > 0 ? 1.0 / (std::tgamma(static_cast<double>(k)) * nu_prod) : 1.0;

    auto cell_value = [&](std::size_t flat) -> double {
      double wprod = 1.0;
      double s = s_off;
      std::size_t rest = flat;
      for (const TermAxis& ta : axes) {
        const std::size_t i = rest % ta.count;
        rest /= ta.count;
        const auto& node = i < ta.head->size()
                               ? (*ta.head)[i]
                               : (*ta.tail)[i - ta.head->size()];
        wprod *= node.second;
        s += ta.nu * -node.first;
      }
      const double kern = k == 0 ? kernel.phi(s) : kernel.moment(k, s) * moment_scale;
      return wprod * kern;
    };

    const double term = blocked_sum(cells, threads, cell_value);
    if (!std::isfinite(term)) return kInf;
    total += term;
  }
  return problem.prefactor * problem.separable * total;
}

double integrate_radial_checked(const SncChart& chart, const MonomialSection& f,
                                const RadialKernel& kernel,
                                const QuadratureSpec& spec) {
  auto run = [&](int level) {
    return integrate_radial(build_radial_problem(chart, f, spec, level), kernel,
                            spec.threads);
  };
  double coarse = run(0);
  double fine = run(1);
  if (std::isinf(coarse) && std::isinf(fine)) return fine;
  auto close = [&](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= spec.quad_rel_tol * scale + spec.abs_tol;
  };
  if (close(coarse, fine)) return fine;
  coarse = fine;
  fine = run(2);
  if (close(coarse, fine)) return fine;
  throw NumericError("quadrature failed to converge within node budget", coarse,
                     fine);
}

double transverse_factor(double e, double support_radius,
                         const QuadratureSpec& spec, int level) {
  // 2 pi int_0^{u_max} u^{e-1} chi^2 du via the same head/tail split.
  const double u_max = support_radius * support_radius;
  std::vector<std::pair<double, double>> nodes;
  build_head(u_max, support_radius, e, head_panels(level),
             panel_order(spec, level), nodes);
  build_tail(u_max, e, spec.t_min, 4 * level, panel_order(spec, level), nodes);
  std::vector<double> terms;
  terms.reserve(nodes.size());
  for (auto [t, w] : nodes) terms.push_back(w);
  return 2.0 * std::numbers::pi * pairwise_sum(terms);
}

}  // namespace lcm
