#pragma once

#include <vector>

#include "lcm/chart.hpp"

namespace lcm {

struct LogWeightMembership {
  bool finite = false;
  double value = 0.0;  // +inf when divergent
};

// Finiteness (and value) of  int_{|z| < r0} |z|^{2a} |log|z|^2|^{2p - s} dA,
// the hypothesis class of the weighted continuation lemmas, with
// |u| = |z|^a |log|z|^2|^p on a disc of radius r0 < 1.  Substituting
// u = -log|z|^2 reduces everything to  pi * int_{u0}^inf u^{2p-s} e^{-(a+1)u} du,
// so the decision is: finite iff a > -1, or a = -1 and 2p - s < -1.
// a = -1 encodes the singular kernel dA/(|z|^2 |log|z|^2|^s).
LogWeightMembership log_weight_membership(int a, double p, double s, double r0);

struct LogPoleLimit {
  std::vector<double> eps;
  std::vector<double> values;  // eps * int dA/(|z|^2 |log|z|^2|^{1+2 eps})
  double limit = 0.0;          // extrapolated eps -> 0+, analytically pi/2
  double residual = 0.0;
};

// The scaled pole integral eps * int_{|z|<r0} dA / (|z|^2 |log|z|^2|^{1+2eps});
// with u0 = -log r0^2 the exact value is (pi/2) u0^{-2 eps}, so the limit is
// pi/2 independent of r0.  Values are computed by quadrature, the limit by
// extrapolation over the schedule.
LogPoleLimit log_pole_limit(double r0, const std::vector<double>& eps_schedule);

struct ContinuationLadder {
  std::vector<double> exponents;  // s, s-1+delta, ..., first value <= 1
  [[nodiscard]] int steps() const { return static_cast<int>(exponents.size()) - 1; }
};

// Weight-exponent descent s -> s - (1 - delta) used to lower an
// L^2(|log|z|^2|^{-s}) hypothesis to s <= 1; requires 0 < delta < 1 for
// descent (delta = 1 does not descend and is rejected).
ContinuationLadder continuation_ladder(double s, double delta);

struct HormanderWeightReport {
  // The curvature of log(|psi|^{sigma - sigma eps} (log|ell psi|)^3) against a
  // diagonal psi splits into a ddbar psi part, which vanishes as a current
  // because (1/|psi|) ddbar log|z_j|^2 = 0, and a dpsi ^ dbar psi part whose
  // negativity against omega_b is bounded by c_gradient / b.
  double c_dirac = 0.0;     // identically zero on diagonal data
  double c_gradient = 0.0;  // sup over the polydisc of -(coefficient) * |psi|^2
  double witness_s = 0.0;   // |psi| value attaining the sup
};

HormanderWeightReport hormander_weight_check(const SncChart& chart, int sigma,
                                             double eps, double ell);

}  // namespace lcm
