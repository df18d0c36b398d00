#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcm/chart.hpp"
#include "lcm/lcv.hpp"
#include "lcm/weights.hpp"

namespace lcm {

// Minimal weighted-L^2 extension of the residue class of f modulo
// I(phi_L + m1 psi).  For radial weights distinct monomials are orthogonal,
// so cross terms only add norm and the minimiser is f itself; sections
// already inside I(phi_L + m1 psi) extend by zero.
struct MinimalExtension {
  std::optional<MonomialSection> section;  // absent = zero section
  std::string note;
};
MinimalExtension minimal_extension(const SncChart& chart, const MonomialSection& f);

// int_polydisc |F|^2 e^{-phi_L - m1 psi} / (|psi|^sigma ((sigma log|ell psi|)^2+1)).
// Divergence (missing vanishing: some defect e_j < 0, a zero defect on a
// nu_j = 0 coordinate, or more than sigma zero defects) throws.
double estimate_lhs(const SncChart& chart, const MonomialSection& F, int sigma,
                    const AuxParams& params, const QuadratureSpec& spec);

struct StageReport {
  int sigma = 0;
  double lhs = 0.0;     // weighted norm-square of F_sigma
  double rhs = 0.0;     // (1/sigma) * lcv of the residual at sigma
  double margin = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  bool pass = false;
  MultiMonomialSection extension;  // the F_sigma terms
};

struct ExtensionReport {
  std::vector<StageReport> stages;      // sigma = sigma_f down to 1
  MultiMonomialSection final_residual;  // lies in I(phi_L + m1 psi)
  double psi_shift_used = 0.0;
  std::string note;                     // set when the report is trivially empty
};

// Model-scale consistency check of the extension estimate: stage by stage,
// sigma = sigma_f down to 1, the minimal extension F_sigma of the residual
// supported in codimension sigma must satisfy
//   lhs_sigma <= (1/sigma) * lcv_sigma(residual) + tolerance.
// The minimal extension must satisfy any bound some extension satisfies, so
// a failed margin is reported (never repaired): it would falsify the
// implementation, not the estimate.
ExtensionReport check_main_estimate(const SncChart& chart,
                                    const MultiMonomialSection& f,
                                    const AuxParams& params,
                                    const QuadratureSpec& spec);

}  // namespace lcm
