#include "lcm/lcv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lcm/errors.hpp"
#include "lcm/quadrature.hpp"
#include "lcm/radial_engine.hpp"

namespace lcm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void QuadratureSpec::validate() const {
  if (eps_schedule.empty())
    throw PreconditionError("quadrature spec: empty eps schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    const double e = eps_schedule[i];
    if (!(e > 0.0 && e < 0.5))
      throw PreconditionError("quadrature spec: eps values must lie in (0, 1/2)");
    if (i > 0 && !(e < eps_schedule[i - 1]))
      throw PreconditionError("quadrature spec: eps schedule must be strictly decreasing");
  }
  if (nodes_per_axis < 4)
    throw PreconditionError("quadrature spec: nodes_per_axis too small");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(quad_rel_tol > 0.0))
    throw PreconditionError("quadrature spec: tolerances must be positive");
  if (!(divergence_threshold > 1.0))
    throw PreconditionError("quadrature spec: divergence threshold must exceed 1");
  if (threads < 1)
    throw PreconditionError("quadrature spec: thread count must be >= 1");
}

const char* to_string(MeasureClass c) {
  switch (c) {
    case MeasureClass::Zero: return "zero";
    case MeasureClass::Finite: return "finite";
    case MeasureClass::Divergent: return "divergent";
  }
  return "?";
}

double lcv_integral_eps(const SncChart& chart, const MonomialSection& f,
                        int sigma, double eps, const QuadratureSpec& spec) {
  if (!(eps > 0.0)) throw PreconditionError("lcv_integral_eps: eps must be > 0");
  if (sigma < 0) throw PreconditionError("lcv_integral_eps: sigma must be >= 0");
  spec.validate();
  const PowerKernel kernel(static_cast<double>(sigma) + eps);
  return eps * integrate_radial_checked(chart, f, kernel, spec);
}

namespace {

// Rational-model fit v(eps) = eps / (p eps + q) on the last three schedule
// points (linear in 1/eps after inversion).  The model vanishes at eps = 0
// unless q ~ 0, so it can only certify the Zero branch; anything else is
// reported as ill-conditioned and Richardson takes over.
struct RationalFit {
  bool ok = false;
  double value = 0.0;
};

RationalFit rational_fit(const std::vector<double>& eps,
                         const std::vector<double>& v) {
  RationalFit fit;
  const std::size_t n = v.size();
  if (n < 3) return fit;
  for (std::size_t i = n - 3; i < n; ++i)
    if (!(std::abs(v[i]) > 0.0)) return fit;
  const double x1 = 1.0 / eps[n - 2], y1 = 1.0 / v[n - 2];
  const double x2 = 1.0 / eps[n - 1], y2 = 1.0 / v[n - 1];
  const double q = (y2 - y1) / (x2 - x1);
  const double p = y2 - q * x2;
  const double x0 = 1.0 / eps[n - 3];
  const double predicted = p + q * x0;
  const double actual = 1.0 / v[n - 3];
  if (std::abs(predicted - actual) > 5e-3 * std::abs(actual)) return fit;
  if (!(std::abs(q) * x2 >= 10.0 * std::abs(p))) return fit;  // not eps-dominated
  fit.ok = true;
  fit.value = 0.0;
  return fit;
}

}  // namespace

MeasureResult classify_measure(const std::vector<double>& eps,
                               const std::vector<double>& values,
                               const QuadratureSpec& spec) {
  if (eps.size() != values.size() || eps.empty())
    throw PreconditionError("classify_measure: mismatched samples");

  MeasureResult result;
  result.diagnostics.eps = eps;
  result.diagnostics.raw = values;

  double growth = 0.0;
  bool has_inf = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) has_inf = true;
    if (i > 0 && values[i - 1] > 0.0)
      growth = std::max(growth, values[i] / values[i - 1]);
  }
  result.diagnostics.growth_ratio = has_inf ? kInf : growth;
  if (has_inf || growth >= spec.divergence_threshold) {
    result.cls = MeasureClass::Divergent;
    return result;
  }

  const Extrapolation rich = neville_to_zero(eps, values);
  const RationalFit rat = rational_fit(eps, values);
  result.diagnostics.extrapolation_residual = rich.residual;

  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double zero_gate = std::max(spec.abs_tol, spec.rel_tol * scale);

  if (rat.ok && std::abs(rich.value) <= zero_gate) {
    result.cls = MeasureClass::Zero;
    result.diagnostics.extrapolation_path = "rational";
    return result;
  }
  result.diagnostics.extrapolation_path = "richardson";
  if (std::abs(rich.value) <= zero_gate) {
    result.cls = MeasureClass::Zero;
    return result;
  }
  if (rich.residual > 0.25 * std::abs(rich.value) + spec.abs_tol) {
    std::ostringstream os;
    os << "lcv limit inconclusive: extrapolated " << rich.value << ", residual "
       << rich.residual << ", growth ratio " << growth;
    throw InconclusiveError(os.str());
  }
  result.cls = MeasureClass::Finite;
  result.value = std::max(0.0, rich.value);
  return result;
}

MeasureResult lcv_limit(const SncChart& chart, const MonomialSection& f,
                        int sigma, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<double> values;
  values.reserve(spec.eps_schedule.size());
  for (double eps : spec.eps_schedule)
    values.push_back(lcv_integral_eps(chart, f, sigma, eps, spec));
  return classify_measure(spec.eps_schedule, values, spec);
}

MeasureResult lcv_limit(const SncChart& chart, const MultiMonomialSection& f,
                        int sigma, const QuadratureSpec& spec) {
  spec.validate();
  if (f.terms.empty()) {
    MeasureResult zero;
    zero.cls = MeasureClass::Zero;
    zero.diagnostics.eps = spec.eps_schedule;
    zero.diagnostics.raw.assign(spec.eps_schedule.size(), 0.0);
    return zero;
  }
  // Distinct monomials are orthogonal under the angular integrals, so the
  // measure of the sum is the sum of the per-term measures.
  std::vector<double> values(spec.eps_schedule.size(), 0.0);
  for (const MonomialSection& term : f.terms)
    for (std::size_t i = 0; i < spec.eps_schedule.size(); ++i)
      values[i] += lcv_integral_eps(chart, term, sigma, spec.eps_schedule[i], spec);
  return classify_measure(spec.eps_schedule, values, spec);
}

ClosedForm lcv_closed_form(const SncChart& chart, const MonomialSection& f,
                           const QuadratureSpec& spec) {
  spec.validate();
  const std::vector<Rat> defects = ideal_defects(chart, f, chart.m1);
  std::vector<int> z;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat& e = defects[idx];
    if (e < Rat{0} || (e.is_zero() && chart.psi.coeffs[idx].is_zero()))
      throw PreconditionError(
          "lcv_closed_form: section lacks the required vanishing at coordinate " +
          std::to_string(j + 1));
    if (e.is_zero()) z.push_back(j);
  }

  ClosedForm out;
  out.sigma_f = static_cast<int>(z.size());
  if (out.sigma_f == 0) {
    out.result.cls = MeasureClass::Zero;
    return out;
  }

  const double m1 = chart.m1.to_double();
  double value = f.amplitude * f.amplitude *
                 std::exp(-chart.phi_L.shift - m1 * chart.psi.shift);
  value *= std::pow(2.0 * std::numbers::pi, out.sigma_f) /
           std::tgamma(static_cast<double>(out.sigma_f));
  for (int j : z) value /= chart.psi.coeffs[static_cast<std::size_t>(j)].to_double();
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    if (defects[idx].is_zero()) continue;
    value *= transverse_factor(defects[idx].to_double(), f.support_radius[idx],
                               spec, 1);
  }
  out.result.cls = MeasureClass::Finite;
  out.result.value = value;
  return out;
}

ClosedForm lcv_closed_form(const SncChart& chart, const MultiMonomialSection& f,
                           const QuadratureSpec& spec) {
  ClosedForm out;
  std::vector<ClosedForm> parts;
  parts.reserve(f.terms.size());
  for (const MonomialSection& term : f.terms) {
    parts.push_back(lcv_closed_form(chart, term, spec));
    out.sigma_f = std::max(out.sigma_f, parts.back().sigma_f);
  }
  if (out.sigma_f == 0) {
    out.result.cls = MeasureClass::Zero;
    return out;
  }
  double value = 0.0;
  for (const ClosedForm& part : parts)
    if (part.sigma_f == out.sigma_f) value += *part.result.value;
  out.result.cls = MeasureClass::Finite;
  out.result.value = value;
  return out;
}

std::vector<TrichotomyRow> trichotomy_table(const SncChart& chart,
                                            const MonomialSection& f,
                                            const QuadratureSpec& spec) {
  std::vector<TrichotomyRow> rows;
  rows.reserve(static_cast<std::size_t>(chart.n) + 1);
  for (int sigma = 0; sigma <= chart.n; ++sigma)
    rows.push_back({sigma, lcv_limit(chart, f, sigma, spec)});
  return rows;
}

}  // namespace lcm
