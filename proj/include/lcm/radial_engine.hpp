#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lcm/chart.hpp"
#include "lcm/lcv.hpp"

namespace lcm {

// Shared quadrature core for polydisc integrals of radial integrands
//
//   int |f|^2 e^{-phi_L - m1 psi} K(|psi|) dV,   dV = prod_j (i dz_j ^ dz_j~).
//
// With f monomial and the weights diagonal nothing depends on the angles, so
// each theta_j integrates to 2 pi and the rest reduces, per coordinate, to
// the log radius t_j = log|z_j|^2 with density e^{e_j t_j} (e_j the ideal
// defect at m1) coupled only through s = |psi| = |alpha| + sum nu_j |t_j|.
//
// Coordinates with nu_j = 0 factor out entirely.  For coupled coordinates the
// range splits at tau_j = log(u_max/4), where the cutoff becomes identically
// one: below tau_j a zero-defect coordinate has density 1 and its tail is
// integrated exactly through the simplex volume,
//   int_{orthant} K(s0 + sum y) prod dy = int_0^inf K(s0 + Y) Y^{k-1}/(k-1)! dY,
// leaving the kernel moment to the kernel object (closed form where it has
// one).  Divergent tails are therefore detected exactly, not by truncation.
class RadialKernel {
 public:
  virtual ~RadialKernel() = default;
  virtual double phi(double s) const = 0;
  // J_k(s) = int_0^inf Y^{k-1} phi(s + Y) dY; +inf when divergent.
  virtual double moment(int k, double s) const = 0;
  virtual bool moment_divergent(int k) const = 0;
};

// phi(s) = s^{-q}; moments are Beta integrals.
class PowerKernel final : public RadialKernel {
 public:
  explicit PowerKernel(double q) : q_(q) {}
  double phi(double s) const override;
  double moment(int k, double s) const override;
  bool moment_divergent(int k) const override { return static_cast<double>(k) >= q_; }

 private:
  double q_;
};

// phi(s) = 1 / (s^sigma ((sigma log(ell s))^2 + 1)), the extension-estimate
// weight; moments are 1-D quadratures with a 1/v tail map.
class EstimateWeightKernel final : public RadialKernel {
 public:
  EstimateWeightKernel(int sigma, double ell) : sigma_(sigma), ell_(ell) {}
  double phi(double s) const override;
  double moment(int k, double s) const override;
  bool moment_divergent(int k) const override { return k > sigma_; }

 private:
  int sigma_;
  double ell_;
};

struct RadialAxis {
  double nu = 0.0;
  double defect = 0.0;                                  // e_j
  double tau_abs = 0.0;                                 // |log(u_max/4)|
  std::vector<std::pair<double, double>> head;          // (t, weight), cutoff zone
  std::vector<std::pair<double, double>> tail;          // decaying axes only
};

struct RadialProblem {
  double prefactor = 1.0;   // amp^2 e^{-beta - m1 alpha} (2 pi)^n
  double s_base = 0.0;      // |psi shift|
  double separable = 1.0;   // product over nu = 0 coordinates
  std::vector<RadialAxis> axes;  // coupled (nu > 0) coordinates
  std::vector<int> z;            // indices into axes with zero defect
  bool divergent_power = false;  // some e_j < 0, or e_j = 0 with nu_j = 0
};

// level >= 0 bumps node counts for refinement checks.
RadialProblem build_radial_problem(const SncChart& chart, const MonomialSection& f,
                                   const QuadratureSpec& spec, int level);

double integrate_radial(const RadialProblem& problem, const RadialKernel& kernel,
                        int threads);

// Integrates at two (if needed three) refinement levels; throws NumericError
// when they refuse to agree to spec.quad_rel_tol.
double integrate_radial_checked(const SncChart& chart, const MonomialSection& f,
                                const RadialKernel& kernel,
                                const QuadratureSpec& spec);

// 2 pi int_0^{u_max} u^{e-1} bump(sqrt(u))^2 du, the transverse factor of the
// closed form; e > 0.
double transverse_factor(double e, double support_radius,
                         const QuadratureSpec& spec, int level);

}  // namespace lcm
