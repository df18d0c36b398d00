#include "lcm/chart.hpp"

#include <cmath>
#include <limits>

namespace lcm {

double eval_weight(const DiagonalWeight& w, std::span<const double> moduli_sq) {
  double acc = w.shift;
  for (std::size_t j = 0; j < w.coeffs.size(); ++j) {
    const Rat& c = w.coeffs[j];
    if (c.is_zero()) continue;
    const double u = moduli_sq[j];
    if (u == 0.0) {
      return c.num() > 0 ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
    }
    acc += c.to_double() * std::log(u);
  }
  return acc;
}

namespace {

// 6t^5 - 15t^4 + 10t^3, the C^2 monotone step on [0,1].
double smoothstep5(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep5_d1(double t) {
  const double u = t * (1.0 - t);
  return 30.0 * u * u;
}

}  // namespace

double bump(double r, double R) {
  if (r <= 0.5 * R) return 1.0;
  if (r >= R) return 0.0;
  return 1.0 - smoothstep5((r - 0.5 * R) / (0.5 * R));
}

double bump_d1(double r, double R) {
  if (r <= 0.5 * R || r >= R) return 0.0;
  return -smoothstep5_d1((r - 0.5 * R) / (0.5 * R)) / (0.5 * R);
}

std::vector<Rat> ideal_defects(const SncChart& chart, const MonomialSection& f,
                               const Rat& m) {
  std::vector<Rat> defects;
  defects.reserve(static_cast<std::size_t>(chart.n));
  for (int j = 0; j < chart.n; ++j) {
    const Rat a{f.exponents[static_cast<std::size_t>(j)]};
    const Rat c = chart.phi_L.coeffs[static_cast<std::size_t>(j)] +
                  m * chart.psi.coeffs[static_cast<std::size_t>(j)];
    defects.push_back(a + Rat{1} - c);
  }
  return defects;
}

bool in_multiplier_ideal(const SncChart& chart, const MonomialSection& f,
                         const Rat& m) {
  for (const Rat& e : ideal_defects(chart, f, m))
    if (e <= Rat{0}) return false;
  return true;
}

namespace {

void validate_weight_shape(const SncChart& chart, const DiagonalWeight& w,
                           const char* name, std::vector<Violation>& out) {
  if (static_cast<int>(w.coeffs.size()) != chart.n)
    out.push_back({-1, std::string(name) + " coefficient count differs from chart dimension"});
}

}  // namespace

std::vector<Violation> validate_chart(const SncChart& chart, bool check_klt) {
  std::vector<Violation> out;
  if (chart.n <= 0) out.push_back({-1, "chart dimension must be positive"});
  if (static_cast<int>(chart.radii.size()) != chart.n)
    out.push_back({-1, "radii count differs from chart dimension"});
  validate_weight_shape(chart, chart.phi_L, "phiL", out);
  validate_weight_shape(chart, chart.psi, "psi", out);
  if (!out.empty()) return out;  // shape is broken, per-coordinate checks would lie

  for (int j = 0; j < chart.n; ++j) {
    const double r = chart.radii[static_cast<std::size_t>(j)];
    if (!(r > 0.0 && r < 1.0))
      out.push_back({j, "radius must lie strictly inside (0, 1)"});
    if (chart.psi.coeffs[static_cast<std::size_t>(j)] < Rat{0})
      out.push_back({j, "psi coefficient negative"});
  }
  if (chart.psi.shift > 0.0) out.push_back({-1, "sup psi <= 0 fails (psi shift positive)"});
  if (!(Rat{0} <= chart.m0 && chart.m0 < chart.m1))
    out.push_back({-1, "need 0 <= m0 < m1"});

  if (check_klt) {
    // Transverse to the jump divisor means l_j + m1*nu_j is not an integer >= 1;
    // there the combined coefficient must stay klt (< 1).
    for (int j = 0; j < chart.n; ++j) {
      const std::size_t k = static_cast<std::size_t>(j);
      const Rat d = chart.phi_L.coeffs[k] + chart.m1 * chart.psi.coeffs[k];
      const bool s_component =
          chart.psi.coeffs[k] > Rat{0} && d.is_integer() && d >= Rat{1};
      if (!s_component && !(chart.phi_L.coeffs[k] < Rat{1}))
        out.push_back({j, "klt: transverse phiL coefficient must be < 1"});
    }
  }

  for (const MonomialSection& f : chart.sections) {
    auto sec = validate_section(chart, f);
    out.insert(out.end(), sec.begin(), sec.end());
  }
  return out;
}

std::vector<Violation> validate_section(const SncChart& chart,
                                        const MonomialSection& f) {
  std::vector<Violation> out;
  if (static_cast<int>(f.exponents.size()) != chart.n)
    out.push_back({-1, "section exponent count differs from chart dimension"});
  if (static_cast<int>(f.support_radius.size()) != chart.n)
    out.push_back({-1, "section support_radius count differs from chart dimension"});
  if (!(f.amplitude > 0.0)) out.push_back({-1, "section amplitude must be positive"});
  if (!out.empty()) return out;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    if (f.exponents[k] < 0) out.push_back({j, "section exponent negative"});
    if (!(f.support_radius[k] > 0.0 &&
          f.support_radius[k] <= chart.radii[k]))
      out.push_back({j, "support radius must lie in (0, chart radius]"});
  }
  return out;
}

std::vector<Violation> validate_section(const SncChart& chart,
                                        const MultiMonomialSection& f) {
  std::vector<Violation> out;
  for (const MonomialSection& t : f.terms) {
    auto one = validate_section(chart, t);
    out.insert(out.end(), one.begin(), one.end());
  }
  for (std::size_t p = 0; p < f.terms.size(); ++p)
    for (std::size_t q = p + 1; q < f.terms.size(); ++q)
      if (f.terms[p].exponents == f.terms[q].exponents)
        out.push_back({-1, "multi-monomial terms must have distinct exponents"});
  return out;
}

}  // namespace lcm
