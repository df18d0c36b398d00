#include "lcm/integrability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "lcm/errors.hpp"
#include "lcm/quadrature.hpp"

namespace lcm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LogWeightMembership log_weight_membership(int a, double p, double s, double r0) {
  if (a < -1) throw PreconditionError("log_weight_membership: a must be >= -1");
  if (!(r0 > 0.0 && r0 < 1.0))
    throw PreconditionError("log_weight_membership: r0 must lie in (0, 1)");
  const double u0 = -std::log(r0 * r0);
  const double q = 2.0 * p - s;

  LogWeightMembership out;
  if (a == -1) {
    out.finite = q < -1.0;
    out.value = out.finite
                    ? std::numbers::pi * std::pow(u0, q + 1.0) / (-q - 1.0)
                    : kInf;
    return out;
  }

  // pi * int_{u0}^inf u^q e^{-(a+1)u} du, quadrature over a few decay lengths.
  out.finite = true;
  const double rate = a + 1.0;
  const double hi = u0 + 60.0 / rate;
  std::vector<std::pair<double, double>> nodes;
  for (int panel = 0; panel < 16; ++panel)
    append_gl_panel(u0 + (hi - u0) * panel / 16.0,
                    u0 + (hi - u0) * (panel + 1) / 16.0, 14, nodes);
  std::vector<double> terms;
  terms.reserve(nodes.size());
  for (auto [u, w] : nodes)
    terms.push_back(w * std::exp(q * std::log(u) - rate * u));
  out.value = std::numbers::pi * pairwise_sum(terms);
  return out;
}

LogPoleLimit log_pole_limit(double r0, const std::vector<double>& eps_schedule) {
  if (!(r0 > 0.0 && r0 < 1.0))
    throw PreconditionError("log_pole_limit: r0 must lie in (0, 1)");
  if (eps_schedule.empty())
    throw PreconditionError("log_pole_limit: empty eps schedule");
  const double u0 = -std::log(r0 * r0);

  LogPoleLimit out;
  out.eps = eps_schedule;
  for (double eps : eps_schedule) {
    if (!(eps > 0.0))
      throw PreconditionError("log_pole_limit: eps values must be positive");
    // eps * pi * int_{u0}^inf u^{-1-2eps} du; map x = 1/u and refine panels
    // toward x = 0, where the integrand x^{2eps - 1} has its weak singularity.
    // The skipped mass below the last panel is (x_min/x0)^{2eps} of the total,
    // so the depth must scale like 1/eps.
    const double x0 = 1.0 / u0;
    const int panels = static_cast<int>(std::ceil(16.0 / (2.0 * eps * std::numbers::ln2)));
    std::vector<std::pair<double, double>> nodes;
    double hi = x0;
    for (int panel = 0; panel < panels; ++panel) {
      const double lo = hi * 0.5;
      append_gl_panel(lo, hi, 8, nodes);
      hi = lo;
    }
    std::vector<double> terms;
    terms.reserve(nodes.size());
    for (auto [x, w] : nodes)
      terms.push_back(w * std::exp((2.0 * eps - 1.0) * std::log(x)));
    out.values.push_back(eps * std::numbers::pi * pairwise_sum(terms));
  }
  const Extrapolation ext = neville_to_zero(out.eps, out.values);
  out.limit = ext.value;
  out.residual = ext.residual;
  return out;
}

ContinuationLadder continuation_ladder(double s, double delta) {
  if (!(s > 1.0)) throw PreconditionError("continuation_ladder: s must be > 1");
  if (!(delta > 0.0 && delta <= 1.0))
    throw PreconditionError("continuation_ladder: delta must lie in (0, 1]");
  if (delta == 1.0)
    throw PreconditionError(
        "continuation_ladder: delta = 1 gives the non-decreasing ladder "
        "s -> s; descent needs delta < 1");
  ContinuationLadder out;
  double cur = s;
  out.exponents.push_back(cur);
  while (cur > 1.0) {
    cur -= 1.0 - delta;
    out.exponents.push_back(cur);
  }
  return out;
}

HormanderWeightReport hormander_weight_check(const SncChart& chart, int sigma,
                                             double eps, double ell) {
  if (sigma < 1) throw PreconditionError("hormander_weight_check: sigma >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw PreconditionError("hormander_weight_check: eps must lie in (0, 1)");
  if (!(ell > 0.0)) throw PreconditionError("hormander_weight_check: ell > 0");

  HormanderWeightReport report;
  report.c_dirac = 0.0;  // (1/|psi|) ddbar log|z_j|^2 = 0 as a current

  bool singular = false;
  for (const Rat& nu : chart.psi.coeffs) singular |= !nu.is_zero();
  if (!singular) return report;  // dpsi = 0: no negative contribution at all

  // |psi| range on the polydisc: smallest at the outer corner.
  double s_min = -chart.psi.shift;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    s_min += chart.psi.coeffs[idx].to_double() *
             -std::log(chart.radii[idx] * chart.radii[idx]);
  }
  if (!(s_min > std::exp(1.0 / sigma) / ell))
    throw PreconditionError(
        "hormander_weight_check: polydisc reaches |psi| <= e_sigma/ell; "
        "normalise psi or shrink the radii");

  // -(dpsi^dbar psi coefficient) * s^2
  //   = (sigma - sigma eps) + 3/log(ell s) + 3/log(ell s)^2,
  // decreasing in s, so the sup sits at s_min; scan a log grid anyway and
  // report the witness.
  const int grid = 512;
  const double lo = std::log(s_min);
  const double hi = lo + 40.0;
  for (int i = 0; i < grid; ++i) {
    const double s = std::exp(lo + (hi - lo) * i / (grid - 1));
    const double lg = std::log(ell * s);
    const double val = sigma * (1.0 - eps) + 3.0 / lg + 3.0 / (lg * lg);
    if (val > report.c_gradient) {
      report.c_gradient = val;
      report.witness_s = s;
    }
  }
  if (!std::isfinite(report.c_gradient))
    throw InequalityViolation("hormander_weight_check: unbounded negative part",
                              report.witness_s);
  return report;
}

}  // namespace lcm
