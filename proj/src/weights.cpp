#include "lcm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lcm/errors.hpp"

namespace lcm {

namespace {

// 6u^5 - 15u^4 + 10u^3 and derivatives (the C^2 monotone step on [0,1]).
double step5(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double step5_d1(double u) {
  const double v = u * (1.0 - u);
  return 30.0 * v * v;
}
double step5_d2(double u) { return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u); }

}  // namespace

void AuxParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0))
    throw PreconditionError("aux params: eps must lie in (0, 1)");
  if (!(ell > 0.0)) throw PreconditionError("aux params: ell must be > 0");
  if (sigma < 1) throw PreconditionError("aux params: sigma must be >= 1");
  if (!(delta > 0.0)) throw PreconditionError("aux params: delta must be > 0");
  if (!(A > B && B > 1.0))
    throw PreconditionError("aux params: need A > B > 1");
  if (eps0 < 0.0) throw PreconditionError("aux params: eps0 must be >= 0");
  if (b < 0.0) throw PreconditionError("aux params: b must be >= 0");
  if (!(alpha > 0.0)) throw PreconditionError("aux params: alpha must be > 0");
}

double AuxParams::e_sigma() const { return std::exp(1.0 / sigma); }
double AuxParams::domain_sup_s() const {
  return -std::numbers::e / std::pow(ell, sigma);
}
double AuxParams::domain_sup_t() const { return -e_sigma() / ell; }

AuxWeights::AuxWeights(const AuxParams& params) : params_(params) {
  params_.validate();
  log_ell_sigma_ = params_.sigma * std::log(params_.ell);
}

void AuxWeights::check_s(double s) const {
  if (!(s < params_.domain_sup_s()))
    throw std::domain_error("aux weights: s outside domain s < -e/ell^sigma");
}

void AuxWeights::check_t(double t) const {
  if (!(t < params_.domain_sup_t()))
    throw std::domain_error("aux weights: t outside domain t < -e_sigma/ell");
}

namespace {

// Evaluates F = |x|^p R(W), W = log(c|x|) + d, on x < 0, from (R, R', R''):
//   F'  = -|x|^{p-1} (p R + R'),
//   F'' =  |x|^{p-2} (p(p-1) R + (2p-1) R' + R'').
Deriv radial_log(double abs_x, double p, double R, double R1, double R2) {
  Deriv out;
  const double xp = std::pow(abs_x, p);
  out.v = xp * R;
  out.d1 = -(xp / abs_x) * (p * R + R1);
  out.d2 = (xp / (abs_x * abs_x)) * (p * (p - 1.0) * R + (2.0 * p - 1.0) * R1 + R2);
  return out;
}

}  // namespace

Deriv AuxWeights::nu(double s) const {
  check_s(s);
  const double L = log_ell_sigma_ + std::log(-s) - 1.0;
  return radial_log(-s, 0.0, -std::log(L), -1.0 / L, 1.0 / (L * L));
}

Deriv AuxWeights::eta(double s) const {
  check_s(s);
  const double L = log_ell_sigma_ + std::log(-s) - 1.0;
  return radial_log(-s, 1.0 - params_.eps, L, 1.0, 0.0);
}

Deriv AuxWeights::log_eta(double s) const {
  check_s(s);
  const double e = params_.eps;
  const double L = log_ell_sigma_ + std::log(-s) - 1.0;
  // log eta = (1-e) log|s| + log L, and log|s| = L + 1 - sigma log(ell).
  const double value = (1.0 - e) * std::log(-s) + std::log(L);
  return radial_log(-s, 0.0, value, (1.0 - e) + 1.0 / L,
                    -1.0 / (L * L));
}

double AuxWeights::lambda_over_eta_L(double L) const {
  const double e = params_.eps;
  const double p1 = (1.0 - e) * L + 1.0;
  return L * p1 * p1 / (2.0 * e * L + 1.0);
}

Deriv AuxWeights::lambda(double s) const {
  check_s(s);
  const double e = params_.eps;
  const double L = log_ell_sigma_ + std::log(-s) - 1.0;
  const double p1 = (1.0 - e) * L + 1.0;
  const double D = 2.0 * e * L + 1.0;
  const double N = L * p1 * p1;
  const double N1 = p1 * (p1 + 2.0 * (1.0 - e) * L);
  const double N2 = 4.0 * (1.0 - e) * p1 + 2.0 * (1.0 - e) * (1.0 - e) * L;
  const double R = N / D;
  const double R1 = (N1 - 2.0 * e * R) / D;
  const double R2 = (N2 - 4.0 * e * R1) / D;
  return radial_log(-s, 1.0 - e, R, R1, R2);
}

Deriv AuxWeights::gamma(double s) const {
  check_s(s);
  const double e = params_.eps;
  const double L = log_ell_sigma_ + std::log(-s) - 1.0;
  return radial_log(-s, -1.0 - e, e * (1.0 - e) * L, e * (1.0 - e), 0.0);
}

double AuxWeights::gamma_defining(double s) const {
  const Deriv et = eta(s);
  const Deriv nv = nu(s);
  const Deriv lm = lambda(s);
  return et.v * nv.d2 - et.d2 - et.d1 * et.d1 / lm.v;
}

double AuxWeights::gamma_bracket(double s) const {
  const Deriv et = eta(s);
  const Deriv nv = nu(s);
  const Deriv le = log_eta(s);
  const Deriv lm = lambda(s);
  return et.v * (nv.d2 - le.d2 - (1.0 + et.v / lm.v) * le.d1 * le.d1);
}

Deriv AuxWeights::mu(double t) const {
  check_t(t);
  const int sg = params_.sigma;
  const double e = params_.eps;
  const double M = std::log(params_.ell * -t);
  const double sM = sg * M - 1.0;  // sigma log|ell t / e_sigma|
  const double C = sg * (1.0 - e) + sg / sM + 3.0 / M;
  Deriv out;
  out.v = -(sg * (1.0 - e) * std::log(-t) + std::log(sM) + 3.0 * std::log(M));
  out.d1 = C / -t;
  out.d2 = (C + sg * sg / (sM * sM) + 3.0 / (M * M)) / (t * t);
  return out;
}

Deriv AuxWeights::Lambda(double t) const {
  check_t(t);
  const int sg = params_.sigma;
  const double e = params_.eps;
  const double M = std::log(params_.ell * -t);
  const double p = sg - sg * e - 2.0;
  const double R = sg * (sg - 1.0) * ((1.0 - e) * (sg * M - 1.0) + 2.0);
  const double R1 = sg * sg * (sg - 1.0) * (1.0 - e);
  return radial_log(-t, p, R, R1, 0.0);
}

double AuxWeights::growth_ratio_L(double L) const {
  // (eta + lambda) e^nu / (|s|^{1-eps} ((L+1)^2 + 1)); all |s| powers cancel.
  const double lhs = (L + lambda_over_eta_L(L)) / L;
  return lhs / ((L + 1.0) * (L + 1.0) + 1.0);
}

double AuxWeights::growth_ratio(double s) const {
  check_s(s);
  return growth_ratio_L(log_ell_sigma_ + std::log(-s) - 1.0);
}

namespace {

struct Tracker {
  double worst = std::numeric_limits<double>::infinity();
  double witness = 0.0;
  void offer(double margin, double at) {
    if (margin < worst) {
      worst = margin;
      witness = at;
    }
  }
};

double clamped_neg_exp(double log_abs) {
  return -std::exp(std::min(log_abs, 700.0));
}

}  // namespace

BudgetReport budget_check(const AuxParams& params, const std::vector<double>& t_grid) {
  params.validate();
  if (t_grid.empty()) throw PreconditionError("budget_check: empty grid");
  const AuxWeights aux(params);
  const int sg = params.sigma;
  const double e = params.eps;
  const double dom = params.domain_sup_t();
  for (double t : t_grid)
    if (!(t < dom))
      throw PreconditionError("budget_check: grid point outside t < -e_sigma/ell");

  Tracker ddbar_low, ddbar_high, ddbar_mu, lam_pos, growth, gamma_nonneg;
  for (double t : t_grid) {
    const double M = std::log(params.ell * -t);
    const double L = sg * M - 1.0;  // log|ell^sigma s / e| at s = -|t|^sigma
    // coefficient of i ddbar psi, divided by eta:  [sigma(1-eps) + 2/(M - 1/sigma)] / |t|
    const double c1 = (sg * (1.0 - e) + 2.0 / (M - 1.0 / sg)) / -t;
    ddbar_low.offer(c1, t);
    ddbar_high.offer(params.delta - c1, t);
    if (sg >= 2) {
      const double cmu = (sg * (1.0 - e) + 2.0 / (M - 1.0 / sg) + 3.0 / M) / -t;
      ddbar_mu.offer(params.delta - cmu, t);
    }
    lam_pos.offer(aux.lambda_over_eta_L(L), t);
    growth.offer(1.0 - aux.growth_ratio_L(L), t);
    gamma_nonneg.offer(e * (1.0 - e) * L, t);
  }

  BudgetReport report;
  auto push = [&](const std::string& name, const Tracker& tr) {
    report.items.push_back({name, tr.worst, tr.witness, tr.worst >= 0.0});
  };
  push("ddbar_psi_coeff_nonneg", ddbar_low);
  push("ddbar_psi_coeff_le_delta", ddbar_high);
  if (sg >= 2) push("ddbar_psi_coeff_mu_le_delta", ddbar_mu);
  push("lambda_positive", lam_pos);
  push("eta_plus_lambda_growth", growth);
  push("gamma_nonneg", gamma_nonneg);

  if (sg >= 2) {
    // Cutoff-support sub-grid {B <= |t|^{sigma eps} <= A}, built in log space.
    const double lo = std::max(std::log(params.B) / (sg * e),
                               std::log(-dom) + 1e-9);
    const double hi = std::max(lo, std::log(params.A) / (sg * e));
    const std::size_t n = std::max<std::size_t>(t_grid.size(), 64);
    Tracker mu_slope, lambda_bound;
    for (std::size_t i = 0; i < n; ++i) {
      const double log_abs = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(n - 1);
      const double M = std::log(params.ell) + log_abs;
      const double sM = sg * M - 1.0;
      const double t_mu = sg * (1.0 - e) + sg / sM + 3.0 / M;  // |t| mu'(t)
      mu_slope.offer((sg + 1.0) - t_mu, clamped_neg_exp(log_abs));
      // Lambda(t) t^2 / (sigma(sigma-1) eta(-|t|^sigma)) = (1-eps) + 2/sM <= 2
      lambda_bound.offer(2.0 - ((1.0 - e) + 2.0 / sM), clamped_neg_exp(log_abs));
    }
    push("mu_slope_on_cutoff_support", mu_slope);
    push("curvature_Lambda_on_cutoff_support", lambda_bound);
  }

  report.all_pass = true;
  for (const BudgetItem& item : report.items) report.all_pass &= item.pass;
  return report;
}

double normalisation_constant() {
  // Root a > e of 2/(a log(a/e)) + 1/a = 1.
  auto f = [](double a) {
    return 2.0 / (a * (std::log(a) - 1.0)) + 1.0 / a - 1.0;
  };
  double lo = std::numbers::e + 1e-6;
  double hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

double normalisation_condition(int sigma, double ell, double s) {
  const double e_sigma = std::exp(1.0 / sigma);
  const double lg = std::log(ell * s / e_sigma);
  if (!(lg > 0.0)) return std::numeric_limits<double>::infinity();
  if (sigma == 1) return 2.0 / (s * lg) + 1.0 / s;
  return 5.0 / (s * lg) + sigma / s;
}

}  // namespace

PsiNormalization normalize_psi(const SncChart& chart, const AuxParams& params) {
  params.validate();
  const int sg = params.sigma;
  const double ell = params.ell;

  // Smallest s with psi < -e_sigma/ell and the per-sigma inequality; the
  // condition is decreasing in s, so bisect.
  double lo = (params.e_sigma() / ell) * (1.0 + 1e-9);
  double hi = lo;
  while (normalisation_condition(sg, ell, hi) > params.delta) {
    hi *= 2.0;
    if (hi > 1e300)
      throw PreconditionError("normalize_psi: no admissible shift (delta too small?)");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normalisation_condition(sg, ell, mid) > params.delta)
      lo = mid;
    else
      hi = mid;
  }
  const double s_star = hi;

  // |psi| is smallest at the outer corner of the polydisc.
  double corner = 0.0;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    corner += chart.psi.coeffs[idx].to_double() *
              -std::log(chart.radii[idx] * chart.radii[idx]);
  }

  PsiNormalization out;
  out.s_required = s_star;
  out.chart = chart;
  const double needed = -std::max(0.0, s_star - corner);
  out.chart.psi.shift = std::min(chart.psi.shift, needed);
  out.shift_used = out.chart.psi.shift;

  // Boundary-grid verification, where |psi| is smallest.
  const int K = 9;
  std::vector<double> moduli(static_cast<std::size_t>(chart.n));
  std::vector<int> idx(static_cast<std::size_t>(chart.n), K);
  for (;;) {
    bool on_boundary = false;
    for (int j = 0; j < chart.n; ++j)
      on_boundary |= idx[static_cast<std::size_t>(j)] == K;
    if (on_boundary) {
      for (int j = 0; j < chart.n; ++j) {
        const std::size_t k = static_cast<std::size_t>(j);
        const double r = chart.radii[k] * idx[k] / K;
        moduli[k] = r * r;
      }
      const double psi_val = eval_weight(out.chart.psi, moduli);
      const double s = -psi_val;
      if (!(psi_val < -params.e_sigma() / ell) ||
          normalisation_condition(sg, ell, s) > params.delta * (1.0 + 1e-9))
        throw NumericError("normalize_psi: boundary verification failed", s, s_star);
    }
    int j = 0;
    for (; j < chart.n; ++j) {
      std::size_t k = static_cast<std::size_t>(j);
      if (idx[k] > 1) {
        --idx[k];
        break;
      }
      idx[k] = K;
    }
    if (j == chart.n) break;
  }
  return out;
}

XlogxReport xlogx_bound_check(int grid_points, double eps, double s) {
  if (!(eps > 0.0) || s < 0.0 || grid_points < 2)
    throw PreconditionError("xlogx_bound_check: need eps > 0, s >= 0, grid >= 2");
  XlogxReport report;

  auto log_ratio = [&](double log_x) {
    // log of x^eps |log x|^s e^s eps^s / s^s; s = 0 has bound 1.
    if (s == 0.0) return eps * log_x;
    return eps * log_x + s * std::log(-log_x) + s + s * std::log(eps) -
           s * std::log(s);
  };

  // log-spaced in u = |log x| over [1e-8, 1e6], plus the analytic peak.
  const double lo = std::log(1e-8);
  const double hi = std::log(1e6);
  for (int i = 0; i < grid_points; ++i) {
    const double u = std::exp(lo + (hi - lo) * i / (grid_points - 1));
    const double r = std::exp(log_ratio(-u));
    if (r > report.worst_ratio) {
      report.worst_ratio = r;
      report.arg_x = std::exp(-u);
    }
  }
  const double peak_log_x = s > 0.0 ? -s / eps : -1e-12;
  report.ratio_at_peak = std::exp(log_ratio(peak_log_x));
  if (report.ratio_at_peak > report.worst_ratio) {
    report.worst_ratio = report.ratio_at_peak;
    report.arg_x = std::exp(peak_log_x);
  }
  return report;
}

CutoffProfile::CutoffProfile(double A_, double B_, double eps0_)
    : A(A_), B(B_), eps0(eps0_) {
  if (!(A > B && B > 1.0))
    throw PreconditionError("cutoff: need A > B > 1");
  if (eps0 < 0.0) throw PreconditionError("cutoff: eps0 must be >= 0");
}

double CutoffProfile::theta(double x) const {
  const double lo = 1.0 / A, w = 1.0 / B - 1.0 / A;
  if (x <= lo) return 1.0;
  if (x >= 1.0 / B) return 0.0;
  return 1.0 - step5((x - lo) / w);
}

double CutoffProfile::theta_d1(double x) const {
  const double lo = 1.0 / A, w = 1.0 / B - 1.0 / A;
  if (x <= lo || x >= 1.0 / B) return 0.0;
  return -step5_d1((x - lo) / w) / w;
}

double CutoffProfile::theta_d2(double x) const {
  const double lo = 1.0 / A, w = 1.0 / B - 1.0 / A;
  if (x <= lo || x >= 1.0 / B) return 0.0;
  return -step5_d2((x - lo) / w) / (w * w);
}

double CutoffProfile::sup_d1() const {
  return 1.875 / (1.0 / B - 1.0 / A);  // max of 30u^2(1-u)^2 is 15/8
}

double CutoffProfile::sup_d2() const {
  const double w = 1.0 / B - 1.0 / A;
  return (10.0 / std::sqrt(3.0)) / (w * w);  // max of |60u(1-u)(1-2u)|
}

}  // namespace lcm
