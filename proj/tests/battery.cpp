#include "battery.hpp"

#include <cmath>
#include <numbers>

namespace lcm::testing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SncChart make_chart(std::vector<double> radii, std::vector<Rat> l, double beta,
                    std::vector<Rat> nu, double alpha, Rat m0, Rat m1) {
  SncChart chart;
  chart.n = static_cast<int>(radii.size());
  chart.radii = std::move(radii);
  chart.phi_L.coeffs = std::move(l);
  chart.phi_L.shift = beta;
  chart.psi.coeffs = std::move(nu);
  chart.psi.shift = alpha;
  chart.m0 = m0;
  chart.m1 = m1;
  return chart;
}

MonomialSection make_section(std::vector<std::int64_t> exps, double amp,
                             std::vector<double> support) {
  MonomialSection f;
  f.exponents = std::move(exps);
  f.amplitude = amp;
  f.support_radius = std::move(support);
  return f;
}

std::vector<BatteryCase> build() {
  std::vector<BatteryCase> cases;
  const Rat r0{0}, r1{1};

  auto add = [&](std::string name, SncChart chart, MonomialSection f,
                 int sigma, double closed = -1.0) {
    chart.sections = {f};
    cases.push_back({std::move(name), std::move(chart), std::move(f), sigma, closed});
  };

  // --- one variable ---
  add("1d-basic",
      make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r0, r1),
      make_section({0}, 1.0, {0.5}), 1, kTwoPi);
  add("1d-nu2",
      make_chart({0.5}, {r0}, 0.0, {Rat{2}}, 0.0, r0, Rat{1, 2}),
      make_section({0}, 1.0, {0.5}), 1, kTwoPi / 2.0);
  add("1d-l-half",
      make_chart({0.6}, {Rat{1, 2}}, 0.0, {r1}, 0.0, r0, Rat{1, 2}),
      make_section({0}, 1.0, {0.5}), 1, kTwoPi);
  add("1d-nu3-l-quarter",
      make_chart({0.5}, {Rat{1, 4}}, 0.0, {Rat{3}}, 0.0, r0, Rat{1, 4}),
      make_section({0}, 1.0, {0.4}), 1, kTwoPi / 3.0);
  add("1d-m0-positive",
      make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r1, Rat{2}),
      make_section({1}, 1.0, {0.5}), 1, kTwoPi);
  add("1d-l-negative",
      make_chart({0.5}, {Rat{-1, 2}}, 0.0, {r1}, 0.0, r0, Rat{3, 2}),
      make_section({0}, 1.0, {0.5}), 1, kTwoPi);
  add("1d-sigma0",
      make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r0, r1),
      make_section({1}, 1.0, {0.5}), 0);
  add("1d-amp3",
      make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r0, r1),
      make_section({0}, 3.0, {0.4}), 1, 9.0 * kTwoPi);

  // --- two variables ---
  const SncChart plain2 =
      make_chart({0.5, 0.5}, {r0, r0}, 0.0, {r1, r1}, 0.0, r0, r1);
  add("2d-origin", plain2, make_section({0, 0}, 1.0, {0.5, 0.5}), 2,
      kTwoPi * kTwoPi);
  add("2d-axis", plain2, make_section({0, 1}, 1.0, {0.5, 0.5}), 1);
  add("2d-deep", plain2, make_section({1, 1}, 1.0, {0.5, 0.5}), 0);
  add("2d-nu23",
      make_chart({0.5, 0.5}, {r0, r0}, 0.0, {Rat{2}, Rat{3}}, 0.0, r0, Rat{1, 3}),
      make_section({0, 0}, 1.0, {0.5, 0.5}), 1);
  add("2d-nu0-fractional",
      make_chart({0.5, 0.5}, {r0, Rat{1, 2}}, 0.0, {r1, r0}, 0.0, r0, r1),
      make_section({0, 0}, 1.0, {0.5, 0.5}), 1);
  add("2d-unequal",
      make_chart({0.5, 0.5}, {Rat{1, 2}, r0}, 0.0, {r1, Rat{2}}, 0.0, r0,
                 Rat{1, 2}),
      make_section({0, 0}, 1.0, {0.5, 0.5}), 2, kTwoPi * kTwoPi / 2.0);
  add("2d-m0-positive",
      make_chart({0.5, 0.5}, {r0, r0}, 0.0, {r1, r1}, 0.0, r1, Rat{2}),
      make_section({1, 1}, 1.0, {0.5, 0.5}), 2, kTwoPi * kTwoPi);
  add("2d-l-negative",
      make_chart({0.5, 0.5}, {Rat{-1, 4}, Rat{1, 4}}, 0.0, {r1, r1}, 0.0, r0,
                 Rat{3, 4}),
      make_section({0, 0}, 1.0, {0.5, 0.5}), 1);
  add("2d-shifted",
      make_chart({0.5, 0.5}, {r0, r0}, 0.25, {r1, r1}, -1.0, r0, r1),
      make_section({0, 0}, 1.0, {0.5, 0.5}), 2,
      kTwoPi * kTwoPi * std::exp(-0.25 + 1.0));
  add("2d-asym",
      make_chart({0.7, 0.3}, {Rat{1, 3}, r0}, 0.0, {r1, r1}, 0.0, r0, Rat{2, 3}),
      make_section({0, 0}, 0.5, {0.6, 0.25}), 1);

  // --- three variables ---
  const SncChart plain3 = make_chart({0.5, 0.5, 0.5}, {r0, r0, r0}, 0.0,
                                     {r1, r1, r1}, 0.0, r0, r1);
  add("3d-origin", plain3, make_section({0, 0, 0}, 1.0, {0.5, 0.5, 0.5}), 3,
      kTwoPi * kTwoPi * kTwoPi / 2.0);
  add("3d-codim2", plain3, make_section({0, 0, 1}, 1.0, {0.5, 0.5, 0.5}), 2);
  add("3d-codim1", plain3, make_section({0, 1, 1}, 1.0, {0.5, 0.5, 0.5}), 1);
  add("3d-zero", plain3, make_section({1, 1, 1}, 1.0, {0.5, 0.5, 0.5}), 0);
  add("3d-mixed",
      make_chart({0.5, 0.6, 0.4}, {r0, r0, Rat{1, 2}}, 0.0, {r1, Rat{2}, r0},
                 0.0, r0, Rat{1, 2}),
      make_section({0, 0, 0}, 2.0, {0.45, 0.5, 0.35}), 1);
  add("3d-nu311",
      make_chart({0.5, 0.5, 0.5}, {Rat{1, 3}, r0, r0}, 0.0, {Rat{3}, r1, r1},
                 0.0, r0, Rat{2, 9}),
      make_section({0, 0, 0}, 1.0, {0.5, 0.5, 0.5}), 1);

  return cases;
}

std::vector<StagedCase> build_staged() {
  std::vector<StagedCase> cases;
  const Rat r0{0}, r1{1};

  {
    StagedCase c;
    c.name = "2stage-2d";
    c.chart = make_chart({0.5, 0.5}, {r0, r0}, 0.0, {r1, r1}, 0.0, r0, r1);
    c.section.terms = {make_section({0, 0}, 1.0, {0.5, 0.5}),
                       make_section({0, 1}, 0.7, {0.5, 0.5})};
    c.stage_sigmas = {2, 1};
    c.chart.sections = c.section.terms;
    cases.push_back(std::move(c));
  }
  {
    StagedCase c;
    c.name = "2stage-3d-gap";
    c.chart = make_chart({0.5, 0.5, 0.5}, {r0, r0, r0}, 0.0, {r1, r1, r1}, 0.0,
                         r0, r1);
    c.section.terms = {make_section({0, 0, 0}, 1.0, {0.5, 0.5, 0.5}),
                       make_section({1, 0, 1}, 0.5, {0.5, 0.5, 0.5})};
    c.stage_sigmas = {3, 1};
    c.chart.sections = c.section.terms;
    cases.push_back(std::move(c));
  }
  {
    StagedCase c;
    c.name = "1stage-1d";
    c.chart = make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r0, r1);
    c.section.terms = {make_section({0}, 1.0, {0.5})};
    c.stage_sigmas = {1};
    c.chart.sections = c.section.terms;
    cases.push_back(std::move(c));
  }
  {
    StagedCase c;
    c.name = "trivial-in-ideal";
    c.chart = make_chart({0.5}, {r0}, 0.0, {r1}, 0.0, r0, r1);
    c.section.terms = {make_section({1}, 1.0, {0.5})};
    c.stage_sigmas = {0};
    c.chart.sections = c.section.terms;
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

const std::vector<BatteryCase>& battery() {
  static const std::vector<BatteryCase> cases = build();
  return cases;
}

const std::vector<StagedCase>& staged_battery() {
  static const std::vector<StagedCase> cases = build_staged();
  return cases;
}

}  // namespace lcm::testing
