#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcm/chart.hpp"
#include "lcm/multiplier.hpp"

namespace lcm {

// Controls for the singular quadrature and the eps -> 0+ extrapolation.
struct QuadratureSpec {
  std::vector<double> eps_schedule{0.2, 0.1, 0.05, 0.025};  // decreasing, in (0, 1/2)
  int nodes_per_axis = 12;       // Gauss-Legendre order per panel
  double abs_tol = 1e-9;         // absolute floor for the Zero classification
  double rel_tol = 0.02;         // relative agreement demanded of Finite values
  double divergence_threshold = 4.0;  // growth per eps-halving that flags divergence
  double t_min = -80.0;          // log-radius truncation depth for decaying axes
  double quad_rel_tol = 1e-7;    // refinement agreement before NumericError
  int threads = 1;

  void validate() const;  // throws PreconditionError on malformed spec
};

enum class MeasureClass { Zero, Finite, Divergent };

struct LcvDiagnostics {
  std::vector<double> eps;
  std::vector<double> raw;            // eps * integral at each schedule point
  double extrapolation_residual = 0.0;
  double growth_ratio = 0.0;          // max successive ratio across halvings
  std::string extrapolation_path;     // "richardson" or "rational"
};

struct MeasureResult {
  MeasureClass cls = MeasureClass::Zero;
  std::optional<double> value;  // present iff Finite; always >= 0
  LcvDiagnostics diagnostics;
};

const char* to_string(MeasureClass c);

// eps * int_polydisc |f|^2 e^{-phi_L - m1*psi} / |psi|^{sigma+eps} dV with
// dV = prod_j (i dz_j ^ dz_j~), evaluated by per-coordinate log-radius
// substitution.  Tails over the zero-defect coordinates are integrated in
// closed form (simplex volume + Beta function), so a truly divergent integral
// returns +inf rather than a truncation artifact.
double lcv_integral_eps(const SncChart& chart, const MonomialSection& f,
                        int sigma, double eps, const QuadratureSpec& spec);

// Runs the eps schedule and classifies the limit.  Throws InconclusiveError
// when the values neither settle nor cleanly diverge.
MeasureResult lcv_limit(const SncChart& chart, const MonomialSection& f,
                        int sigma, const QuadratureSpec& spec);
MeasureResult lcv_limit(const SncChart& chart, const MultiMonomialSection& f,
                        int sigma, const QuadratureSpec& spec);

// Pure classification step, exposed for testing: consumes the per-eps values.
MeasureResult classify_measure(const std::vector<double>& eps,
                               const std::vector<double>& values,
                               const QuadratureSpec& spec);

// Closed form of the limit measure:
//   sigma_f = #{ j : defect e_j = 0 },  and for sigma_f >= 1
//   value = (2 pi)^{sigma_f} / ((sigma_f - 1)! prod nu_j)
//           * amp^2 e^{-beta - m1 alpha} * prod_{transverse} T_k,
//   T_k = 2 pi int_0^{R_k^2} u^{e_k - 1} bump(sqrt(u))^2 du.
// The transverse integrand carries the squared modulus |z_k|^{2 e_k - 2};
// this is what the defining eps-limit produces, and the trichotomy tests
// hold the two routes to each other.
struct ClosedForm {
  int sigma_f = 0;
  MeasureResult result;
};
ClosedForm lcv_closed_form(const SncChart& chart, const MonomialSection& f,
                           const QuadratureSpec& spec);
ClosedForm lcv_closed_form(const SncChart& chart, const MultiMonomialSection& f,
                           const QuadratureSpec& spec);

// lcv_limit for sigma = 0..n; rows must come out Divergent...Divergent,
// Finite (at sigma_f, when sigma_f >= 1), Zero...Zero.
struct TrichotomyRow {
  int sigma = 0;
  MeasureResult result;
};
std::vector<TrichotomyRow> trichotomy_table(const SncChart& chart,
                                            const MonomialSection& f,
                                            const QuadratureSpec& spec);

}  // namespace lcm
