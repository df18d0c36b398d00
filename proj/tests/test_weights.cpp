#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lcm/chart.hpp"
#include "lcm/errors.hpp"
#include "lcm/weights.hpp"

using namespace lcm;

namespace {

std::vector<double> log_grid(double lo_abs, double hi_abs, int n) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    grid.push_back(-lo_abs * std::pow(hi_abs / lo_abs,
                                      static_cast<double>(i) / (n - 1)));
  return grid;
}

SncChart trivial_chart() {
  SncChart chart;
  chart.n = 1;
  chart.radii = {0.5};
  chart.phi_L.coeffs = {Rat{0}};
  chart.psi.coeffs = {Rat{0}};
  return chart;
}

}  // namespace

TEST_CASE("gamma computed three ways agrees to 1e-10") {
  for (int sigma : {1, 2, 3}) {
    for (double eps : {1e-3, 0.05, 0.3}) {
      AuxParams p;
      p.sigma = sigma;
      p.eps = eps;
      p.ell = 1.0;
      const AuxWeights aux(p);
      for (double s : log_grid(-p.domain_sup_s() * 1.05, 1e8, 64)) {
        CAPTURE(sigma);
        CAPTURE(eps);
        CAPTURE(s);
        const double target = aux.gamma(s).v;
        CHECK(aux.gamma_defining(s) == doctest::Approx(target).epsilon(1e-10));
        CHECK(aux.gamma_bracket(s) == doctest::Approx(target).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("the error bound holds with equality by construction") {
  // eps^2 e^{-nu} / (|s|^{2+2eps} Gamma) == (eps/(1-eps)) / |s|^{1+eps}
  AuxParams p;
  p.sigma = 1;
  p.eps = 0.07;
  const AuxWeights aux(p);
  for (double s : log_grid(3.0, 1e6, 40)) {
    const double lhs = p.eps * p.eps * std::exp(-aux.nu(s).v) /
                       (std::pow(-s, 2.0 + 2.0 * p.eps) * aux.gamma(s).v);
    const double rhs =
        p.eps / (1.0 - p.eps) * std::pow(-s, -1.0 - p.eps);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("derivative formulas against finite differences") {
  // d1 against value differences, d2 against d1 differences, both at
  // h = |s| * 1e-6; the double-difference route to d2 would drown in
  // cancellation noise at this step size.
  AuxParams p;
  p.sigma = 2;
  p.eps = 0.1;
  p.ell = 0.5;
  const AuxWeights aux(p);
  auto check = [&](auto fn) {
    for (double s : log_grid(-p.domain_sup_s() * 2.0, 1e5, 24)) {
      const double h = -s * 1e-6;
      const Deriv at = fn(s);
      const double fd1 = (fn(s + h).v - fn(s - h).v) / (2.0 * h);
      const double fd2 = (fn(s + h).d1 - fn(s - h).d1) / (2.0 * h);
      CAPTURE(s);
      CHECK(at.d1 == doctest::Approx(fd1).epsilon(1e-5));
      CHECK(at.d2 == doctest::Approx(fd2).epsilon(1e-5));
    }
  };
  check([&](double s) { return aux.nu(s); });
  check([&](double s) { return aux.eta(s); });
  check([&](double s) { return aux.log_eta(s); });
  check([&](double s) { return aux.lambda(s); });
  check([&](double s) { return aux.gamma(s); });
  check([&](double s) { return aux.mu(s); });
  check([&](double s) { return aux.Lambda(s); });
}

TEST_CASE("lambda tends to eta (log|ell^sigma t|)^2 as eps -> 0") {
  AuxParams p;
  p.sigma = 2;
  p.ell = 1.0;
  double prev_gap = 1.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    p.eps = eps;
    const AuxWeights aux(p);
    double gap = 0.0;
    for (double s : log_grid(4.0, 1e5, 24)) {
      const double L = std::log(-s) - 1.0;  // ell = 1
      const double tight = aux.eta(s).v * (L + 1.0) * (L + 1.0);
      gap = std::max(gap, std::abs(aux.lambda(s).v / tight - 1.0));
    }
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 5e-3);
}

TEST_CASE("domain errors outside t < -e_sigma/ell") {
  AuxParams p;
  p.sigma = 1;
  p.ell = 1.0;
  const AuxWeights aux(p);
  CHECK_THROWS_AS((void)aux.eta(-1.0), std::domain_error);  // |s| < e
  CHECK_THROWS_AS((void)aux.mu(-2.0), std::domain_error);   // |t| < e_sigma
  CHECK_NOTHROW((void)aux.eta(-10.0));
}

TEST_CASE("normalisation constant: value, residual, a > e") {
  const double a = normalisation_constant();
  CHECK(a == doctest::Approx(4.6805).epsilon(1e-4));
  CHECK(std::abs(a - 4.6805) < 5e-4);
  const double residual = 2.0 / (a * (std::log(a) - 1.0)) + 1.0 / a - 1.0;
  CHECK(std::abs(residual) < 1e-9);
  CHECK(a > std::numbers::e);
  CHECK(normalisation_constant() == a);  // deterministic
}

TEST_CASE("normalize_psi: the shift -a/delta realises sigma = 1") {
  AuxParams p;
  p.sigma = 1;
  p.eps = 1e-3;
  for (double delta : {0.1, 1.0}) {
    p.delta = delta;
    p.ell = delta;
    const PsiNormalization norm = normalize_psi(trivial_chart(), p);
    CHECK(norm.s_required ==
          doctest::Approx(normalisation_constant() / delta).epsilon(1e-9));
    CHECK(norm.shift_used == doctest::Approx(-norm.s_required).epsilon(1e-6));
    const auto report = budget_check(p, log_grid(norm.s_required, 1e6, 512));
    CHECK(report.all_pass);
  }
}

TEST_CASE("normalize_psi: huge delta needs no shift at all") {
  AuxParams p;
  p.sigma = 1;
  p.delta = 1e9;
  p.ell = 1e3;  // domain floor e/ell tiny against the chart corner depth
  SncChart chart = trivial_chart();
  chart.psi.coeffs = {Rat{1}};
  const PsiNormalization norm = normalize_psi(chart, p);
  CHECK(norm.shift_used == 0.0);
}

TEST_CASE("normalize_psi at sigma = 2 verified by the budget") {
  AuxParams p;
  p.sigma = 2;
  p.eps = 1e-3;
  p.delta = 1.0;
  p.ell = 1.0;
  const PsiNormalization norm = normalize_psi(trivial_chart(), p);
  const auto report = budget_check(p, log_grid(norm.s_required, 1e6, 512));
  CHECK(report.all_pass);
}

TEST_CASE("budget: the battery of sigma, delta combinations passes") {
  for (int sigma : {1, 2, 3}) {
    for (double delta : {0.1, 1.0}) {
      CAPTURE(sigma);
      CAPTURE(delta);
      AuxParams p;
      p.sigma = sigma;
      p.eps = 1e-3;
      p.delta = delta;
      p.ell = delta;
      const PsiNormalization norm = normalize_psi(trivial_chart(), p);
      const auto report = budget_check(p, log_grid(norm.s_required, 1e6, 1024));
      for (const auto& item : report.items) {
        CAPTURE(item.name);
        CHECK(item.pass);
        CHECK(item.margin >= 0.0);
      }
    }
  }
}

TEST_CASE("budget: halving delta without renormalising fails near sup psi") {
  AuxParams p;
  p.sigma = 1;
  p.eps = 1e-3;
  p.delta = 1.0;
  p.ell = 1.0;
  const PsiNormalization norm = normalize_psi(trivial_chart(), p);
  p.delta = 0.5;  // the shift was computed for delta = 1
  const auto grid = log_grid(norm.s_required, 1e6, 512);
  const auto report = budget_check(p, grid);
  CHECK(!report.all_pass);
  bool found = false;
  for (const auto& item : report.items) {
    if (item.name == "ddbar_psi_coeff_le_delta") {
      found = true;
      CHECK(!item.pass);
      // the bound is decreasing in |psi|: the witness sits at the shallow end
      CHECK(item.witness == doctest::Approx(grid.front()).epsilon(1e-12));
    }
  }
  CHECK(found);
}

TEST_CASE("xlogx bound: grid ratios stay below one and touch it at the peak") {
  SUBCASE("s = 0 reduces to x^eps <= 1") {
    const auto r = xlogx_bound_check(4001, 0.3, 0.0);
    CHECK(r.worst_ratio <= 1.0 + 1e-12);
  }
  SUBCASE("s = 2, eps = 0.1: peak near e^{-20}") {
    const auto r = xlogx_bound_check(4001, 0.1, 2.0);
    CHECK(r.worst_ratio <= 1.0 + 1e-12);
    CHECK(r.ratio_at_peak == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::log(r.arg_x) == doctest::Approx(-20.0).epsilon(0.05));
  }
  SUBCASE("s = 1, eps = 1: the classical max of x|log x| at 1/e") {
    const auto r = xlogx_bound_check(4001, 1.0, 1.0);
    CHECK(r.worst_ratio <= 1.0 + 1e-12);
    // bound is 1/e and it is attained: ratio at the peak is 1
    CHECK(r.ratio_at_peak == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cutoff profile: supports, monotonicity, recorded slope bounds") {
  const CutoffProfile theta(4.0, 2.0, 0.0);
  CHECK(theta.theta(0.0) == 1.0);
  CHECK(theta.theta(0.25) == 1.0);   // 1/A
  CHECK(theta.theta(0.5) == 0.0);    // 1/B
  CHECK(theta.theta(2.0) == 0.0);

  double prev = 1.0;
  double sup1 = 0.0, sup2 = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = 1e-3 + (0.6 - 1e-3) * i / 4000.0;
    const double v = theta.theta(x);
    CHECK(v <= prev + 1e-15);
    prev = v;
    sup1 = std::max(sup1, std::abs(theta.theta_d1(x)));
    sup2 = std::max(sup2, std::abs(theta.theta_d2(x)));
  }
  // mean value theorem floor and the measured ceiling
  const double mvt = (4.0 * 2.0) / (4.0 - 2.0);
  CHECK(theta.sup_d1() >= mvt);
  CHECK(theta.sup_d1() <= mvt * 2.0);
  CHECK(sup1 == doctest::Approx(theta.sup_d1()).epsilon(1e-4));
  CHECK(sup2 == doctest::Approx(theta.sup_d2()).epsilon(1e-3));
  CHECK(theta.M_theta_prime() == doctest::Approx(sup1 * sup1).epsilon(1e-3));

  // derivatives are consistent with finite differences across the transition
  for (double x : {0.26, 0.3, 0.35, 0.4, 0.45, 0.49}) {
    const double h = 1e-6;
    const double fd1 = (theta.theta(x + h) - theta.theta(x - h)) / (2.0 * h);
    const double fd2 = (theta.theta_d1(x + h) - theta.theta_d1(x - h)) / (2.0 * h);
    CHECK(theta.theta_d1(x) == doctest::Approx(fd1).epsilon(1e-5));
    CHECK(theta.theta_d2(x) == doctest::Approx(fd2).epsilon(1e-5));
  }
  CHECK_THROWS_AS(CutoffProfile(2.0, 4.0), PreconditionError);
  CHECK_THROWS_AS(CutoffProfile(2.0, 2.0), PreconditionError);
}

TEST_CASE("aux params validation") {
  AuxParams p;
  CHECK_NOTHROW(p.validate());
  p.eps = 1.5;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p = AuxParams{};
  p.A = 1.5;  // A < B
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p = AuxParams{};
  p.sigma = 0;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}
