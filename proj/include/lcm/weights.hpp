#pragma once

#include <string>
#include <vector>

#include "lcm/chart.hpp"

namespace lcm {

// Parameter bundle for the auxiliary weight family.  sigma >= 1 selects the
// family (every ell in the defining formulas is replaced by ell^sigma, and
// the functions are composed with -|psi|^sigma).
struct AuxParams {
  double eps = 1e-3;    // in (0, 1)
  double ell = 1.0;     // > 0
  int sigma = 1;        // >= 1
  double delta = 1.0;   // > 0, the curvature budget
  double A = 4.0;       // cutoff plateau edge, A > B > 1
  double B = 2.0;
  double eps0 = 0.0;    // slack added to the cutoff slope bound
  double b = 1.0;       // metric regularisation weight (>= 0)
  double alpha = 1.0;   // Cauchy-Schwarz split constant (> 0)

  void validate() const;  // throws PreconditionError
  [[nodiscard]] double e_sigma() const;       // e^(1/sigma)
  [[nodiscard]] double domain_sup_s() const;  // s-domain is s < -e/ell^sigma
  [[nodiscard]] double domain_sup_t() const;  // t-domain is t < -e_sigma/ell
};

struct Deriv {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// The auxiliary family in closed form, on the s-domain s < -e/ell^sigma,
// writing L = log|ell^sigma s / e|:
//   e^nu = 1/L,      eta = |s|^{1-eps} L,
//   lambda = eta ((1-eps)L + 1)^2 / (2 eps L + 1),
//   Gamma = eps(1-eps) L / |s|^{1+eps}  (= eta nu'' - eta'' - (eta')^2/lambda),
// plus the psi-level companions on t < -e_sigma/ell, writing M = log(ell|t|):
//   e^{-mu(t)} = eta(-|t|^sigma) (log|ell t|)^3,
//   Lambda(t) = sigma(sigma-1) |t|^{sigma - sigma eps - 2} ((1-eps)(sigma M - 1) + 2).
// All derivatives are hand-differentiated closed forms; finite differences
// are the test, never the implementation.
class AuxWeights {
 public:
  explicit AuxWeights(const AuxParams& params);

  [[nodiscard]] const AuxParams& params() const { return params_; }

  // s-domain family
  [[nodiscard]] Deriv nu(double s) const;
  [[nodiscard]] Deriv eta(double s) const;
  [[nodiscard]] Deriv log_eta(double s) const;
  [[nodiscard]] Deriv lambda(double s) const;
  [[nodiscard]] Deriv gamma(double s) const;           // target closed form
  [[nodiscard]] double gamma_defining(double s) const; // eta nu'' - eta'' - (eta')^2/lambda
  [[nodiscard]] double gamma_bracket(double s) const;  // eta (nu'' - (log eta)'' - (1+eta/lambda)((log eta)')^2)

  // psi-domain companions (only meaningful for sigma >= 2, but defined always)
  [[nodiscard]] Deriv mu(double t) const;
  [[nodiscard]] Deriv Lambda(double t) const;

  // (eta + lambda) e^nu <= |s|^{1-eps} ((log|ell^sigma s|)^2 + 1), as a ratio
  // of the two sides (must stay <= 1 on the domain).
  [[nodiscard]] double growth_ratio(double s) const;

  // L-space forms of the s-independent factors; safe at magnitudes of |s|
  // that would overflow a double.  L = log|ell^sigma s / e| > 0.
  [[nodiscard]] double lambda_over_eta_L(double L) const;
  [[nodiscard]] double growth_ratio_L(double L) const;

 private:
  void check_s(double s) const;
  void check_t(double t) const;
  AuxParams params_;
  double log_ell_sigma_;  // sigma * log(ell)
};

struct BudgetItem {
  std::string name;
  double margin = 0.0;   // min over the grid of (bound - value); >= 0 passes
  double witness = 0.0;  // grid point attaining the margin (a psi value, < 0)
  bool pass = false;
};

struct BudgetReport {
  std::vector<BudgetItem> items;
  bool all_pass = false;
};

// Pointwise verification of the curvature-budget inequalities on a grid of
// psi-values (all < -e_sigma/ell):
//   (i)   0 <= coefficient of i ddbar psi <= delta,
//   (ii)  lambda > 0,
//   (iii) (eta+lambda) e^nu <= |s|^{1-eps}((log|ell^sigma s|)^2 + 1),
//   (vi)  Gamma >= 0,
// and for sigma >= 2 on the cutoff-support sub-grid {B <= |t|^{sigma eps} <= A}:
//   (iv)  |t| mu'(t) <= sigma + 1,
//   (v)   Lambda(t) <= 2 sigma(sigma-1) eta_eps(-|t|^sigma)/t^2,
// plus the mu-augmented ddbar-psi coefficient (i-mu).  Margins are reported
// so tightness stays visible.
BudgetReport budget_check(const AuxParams& params, const std::vector<double>& t_grid);

// Root a > e of 2/(a log(a/e)) + 1/a = 1, bisected to 1e-12.
double normalisation_constant();

struct PsiNormalization {
  SncChart chart;          // psi.shift decreased as needed
  double shift_used = 0.0; // the new psi.shift
  double s_required = 0.0; // the |psi| floor that was enforced
};

// Decreases psi.shift until psi < -e_sigma/ell on the whole polydisc together
// with the per-sigma normalisation inequality, checked where |psi| is
// smallest:
//   sigma = 1 :  2/(|psi| log|ell psi / e|) + 1/|psi| <= delta,
//   sigma >= 2:  5/(|psi| log|ell psi / e_sigma|) + sigma/|psi| <= delta.
PsiNormalization normalize_psi(const SncChart& chart, const AuxParams& params);

struct XlogxReport {
  double worst_ratio = 0.0;  // max over grid of x^eps |log x|^s e^s eps^s / s^s
  double arg_x = 0.0;        // grid point attaining the max
  double ratio_at_peak = 0.0;  // ratio at x = e^{-s/eps}, ~1 when the bound is tight
};

// Grid check of x^eps |log x|^s <= s^s/(e^s eps^s) on (0,1) (0^0 = 1).
XlogxReport xlogx_bound_check(int grid_points, double eps, double s);

// The concrete cutoff: theta == 1 on [0, 1/A], quintic smoothstep down to 0
// at 1/B, non-increasing, C^2.  sup|theta'| and sup|theta''| are recorded for
// honest use as the slope constants in the estimates.
struct CutoffProfile {
  double A = 4.0;
  double B = 2.0;
  double eps0 = 0.0;

  CutoffProfile(double A_, double B_, double eps0_ = 0.0);

  [[nodiscard]] double theta(double x) const;
  [[nodiscard]] double theta_d1(double x) const;
  [[nodiscard]] double theta_d2(double x) const;
  [[nodiscard]] double sup_d1() const;  // 1.875 / (1/B - 1/A)
  [[nodiscard]] double sup_d2() const;  // (10/sqrt 3) / (1/B - 1/A)^2
  [[nodiscard]] double M_theta_prime() const {  // measured slope bound, squared
    const double m = sup_d1() + eps0;
    return m * m;
  }
};

}  // namespace lcm
