#include "lcm/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "lcm/errors.hpp"
#include "lcm/multiplier.hpp"
#include "lcm/radial_engine.hpp"

namespace lcm {

MinimalExtension minimal_extension(const SncChart& chart, const MonomialSection& f) {
  if (!in_multiplier_ideal(chart, f, chart.m0)) {
    const std::vector<Rat> defects = ideal_defects(chart, f, chart.m0);
    for (int j = 0; j < chart.n; ++j)
      if (defects[static_cast<std::size_t>(j)] <= Rat{0})
        throw PreconditionError(
            "minimal_extension: section not in I(phi_L + m0*psi); failing "
            "coordinate " + std::to_string(j + 1));
  }
  MinimalExtension out;
  if (in_multiplier_ideal(chart, f, chart.m1)) {
    out.note = "section lies in I(phi_L + m1*psi); residue class is zero";
    return out;
  }
  out.section = f;  // orthogonality: any admissible cross term only adds norm
  return out;
}

double estimate_lhs(const SncChart& chart, const MonomialSection& F, int sigma,
                    const AuxParams& params, const QuadratureSpec& spec) {
  if (sigma < 1) throw PreconditionError("estimate_lhs: sigma must be >= 1");
  spec.validate();
  params.validate();

  const std::vector<Rat> defects = ideal_defects(chart, F, chart.m1);
  int zeros = 0;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat& e = defects[idx];
    if (e < Rat{0} || (e.is_zero() && chart.psi.coeffs[idx].is_zero()))
      throw PreconditionError(
          "estimate_lhs: divergent norm, section lacks vanishing at coordinate " +
          std::to_string(j + 1));
    if (e.is_zero()) ++zeros;
  }
  if (zeros > sigma)
    throw PreconditionError(
        "estimate_lhs: divergent norm, " + std::to_string(zeros) +
        " zero-defect coordinates against weight exponent sigma = " +
        std::to_string(sigma));

  // Weight validity needs |psi| > e_sigma/ell on the polydisc.
  double corner = chart.psi.shift;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    corner += chart.psi.coeffs[idx].to_double() *
              std::log(chart.radii[idx] * chart.radii[idx]);
  }
  if (!(corner < -params.e_sigma() / params.ell))
    throw PreconditionError(
        "estimate_lhs: psi not normalised (psi < -e_sigma/ell fails); apply "
        "normalize_psi first");

  const EstimateWeightKernel kernel(sigma, params.ell);
  return integrate_radial_checked(chart, F, kernel, spec);
}

ExtensionReport check_main_estimate(const SncChart& chart,
                                    const MultiMonomialSection& f,
                                    const AuxParams& params,
                                    const QuadratureSpec& spec) {
  spec.validate();
  params.validate();
  {
    const auto chart_violations = validate_chart(chart);
    if (!chart_violations.empty())
      throw PreconditionError("check_main_estimate: invalid chart: " +
                              chart_violations.front().message);
    const auto section_violations = validate_section(chart, f);
    if (!section_violations.empty())
      throw PreconditionError("check_main_estimate: invalid section: " +
                              section_violations.front().message);
  }

  // Curvature hypothesis on the model: diagonal weights make
  // ddbar(phi_L + (m1+beta) psi) a combination of currents >= 0 exactly when
  // every coefficient l_j + (m1+beta) nu_j is >= 0; with nu >= 0 it suffices
  // to check beta = 0.  Certified symbolically.
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    if (chart.phi_L.coeffs[idx] + chart.m1 * chart.psi.coeffs[idx] < Rat{0})
      throw PreconditionError(
          "check_main_estimate: curvature hypothesis fails at coordinate " +
          std::to_string(j + 1));
  }
  for (const MonomialSection& term : f.terms) {
    if (!in_multiplier_ideal(chart, term, chart.m0))
      throw PreconditionError(
          "check_main_estimate: a term is not in I(phi_L + m0*psi)");
  }

  // Stage decomposition by codimension of the zero-defect set.
  int sigma_max = 0;
  std::vector<int> term_sigma(f.terms.size(), 0);
  for (std::size_t p = 0; p < f.terms.size(); ++p) {
    term_sigma[p] = static_cast<int>(zero_defect_set(chart, f.terms[p]).size());
    sigma_max = std::max(sigma_max, term_sigma[p]);
  }

  ExtensionReport report;
  if (sigma_max == 0) {
    report.final_residual = f;
    report.psi_shift_used = chart.psi.shift;
    report.note = "section lies in I(phi_L + m1*psi); nothing to extend";
    return report;
  }

  AuxParams norm_params = params;
  norm_params.sigma = sigma_max;
  const PsiNormalization normalized = normalize_psi(chart, norm_params);
  const SncChart& work = normalized.chart;
  report.psi_shift_used = normalized.shift_used;

  for (int sigma = sigma_max; sigma >= 1; --sigma) {
    StageReport stage;
    stage.sigma = sigma;
    // Residual before this stage: everything of codimension <= sigma
    // (codimension-0 terms contribute a Zero measure but belong to it).
    MultiMonomialSection residual;
    for (std::size_t p = 0; p < f.terms.size(); ++p)
      if (term_sigma[p] <= sigma) residual.terms.push_back(f.terms[p]);

    double rhs_residual_gauge = 0.0;
    for (std::size_t p = 0; p < f.terms.size(); ++p) {
      if (term_sigma[p] != sigma) continue;
      const MinimalExtension ext = minimal_extension(work, f.terms[p]);
      stage.extension.terms.push_back(*ext.section);
      stage.lhs += estimate_lhs(work, *ext.section, sigma, params, spec);
    }
    if (!residual.terms.empty()) {
      const MeasureResult measure = lcv_limit(work, residual, sigma, spec);
      if (measure.cls == MeasureClass::Divergent)
        throw PreconditionError(
            "check_main_estimate: residual measure diverges at its own "
            "codimension; inconsistent section data");
      stage.rhs = measure.value.value_or(0.0) / sigma;
      rhs_residual_gauge = measure.diagnostics.extrapolation_residual / sigma;
    }
    stage.margin = stage.rhs - stage.lhs;
    stage.tolerance =
        3.0 * std::max({rhs_residual_gauge, spec.rel_tol * std::abs(stage.rhs),
                        spec.abs_tol});
    stage.pass = stage.margin >= -stage.tolerance;
    report.stages.push_back(std::move(stage));
  }

  // Telescoping, in exact arithmetic: f minus all stage extensions must lie
  // in I(phi_L + m1*psi).
  for (std::size_t p = 0; p < f.terms.size(); ++p)
    if (term_sigma[p] == 0) report.final_residual.terms.push_back(f.terms[p]);
  std::size_t staged = 0;
  for (const StageReport& stage : report.stages) staged += stage.extension.terms.size();
  if (staged + report.final_residual.terms.size() != f.terms.size())
    throw Error("check_main_estimate: stage decomposition lost terms");
  for (const MonomialSection& r : report.final_residual.terms)
    if (!in_multiplier_ideal(chart, r, chart.m1))
      throw Error("check_main_estimate: residual escaped I(phi_L + m1*psi)");

  return report;
}

}  // namespace lcm
