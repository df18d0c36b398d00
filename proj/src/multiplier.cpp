#include "lcm/multiplier.hpp"

#include <algorithm>
#include <set>

#include "lcm/errors.hpp"

namespace lcm {

bool divides(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

MonomialIdeal antichain(std::vector<std::vector<std::int64_t>> generators) {
  std::vector<std::vector<std::int64_t>> kept;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < generators.size() && !dominated; ++j) {
      if (i == j) continue;
      if (divides(generators[j], generators[i]) &&
          !(generators[i] == generators[j] && j > i))
        dominated = true;
    }
    if (!dominated) kept.push_back(generators[i]);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return MonomialIdeal{std::move(kept)};
}

namespace {

std::int64_t generator_exponent(const Rat& c) {
  // min{ a in Z>=0 : a > c - 1 }.  For integer c this is c itself; the
  // boundary a = c - 1 is excluded because int r^{-1} dr diverges (log).
  const Rat cm1 = c - Rat{1};
  if (cm1 < Rat{0}) return 0;
  return cm1.next_integer();
}

}  // namespace

MonomialIdeal multiplier_ideal(const DiagonalWeight& w) {
  std::vector<std::int64_t> gen;
  gen.reserve(w.coeffs.size());
  for (const Rat& c : w.coeffs) gen.push_back(generator_exponent(c));
  return MonomialIdeal{{std::move(gen)}};
}

std::vector<std::int64_t> ideal_generator(const SncChart& chart, const Rat& m) {
  DiagonalWeight w;
  w.coeffs.reserve(static_cast<std::size_t>(chart.n));
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    w.coeffs.push_back(chart.phi_L.coeffs[k] + m * chart.psi.coeffs[k]);
  }
  return multiplier_ideal(w).generators.front();
}

JumpReport jumping_numbers(const SncChart& chart, const Rat& m_max) {
  if (!(m_max > Rat{0})) throw PreconditionError("jumping_numbers: m_max must be > 0");

  std::set<Rat> jumps;
  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat nu = chart.psi.coeffs[idx];
    if (!(nu > Rat{0})) continue;  // constant family along this coordinate
    const Rat l = chart.phi_L.coeffs[idx];
    // (k - l)/nu in (0, m_max]  <=>  k in (l, l + m_max*nu]; the generator only
    // moves once the pole order reaches 1, hence k >= 1.
    std::int64_t k = std::max<std::int64_t>(1, l.next_integer());
    for (;; ++k) {
      const Rat m = (Rat{k} - l) / nu;
      if (m > m_max) break;
      jumps.insert(m);
    }
  }

  JumpReport report;
  report.jumps.assign(jumps.begin(), jumps.end());
  report.m1_is_jump = jumps.count(chart.m1) > 0;
  for (const Rat& m : report.jumps)
    if (chart.m0 < m && m < chart.m1) report.interior_jumps.push_back(m);

  for (int j = 0; j < chart.n; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat nu = chart.psi.coeffs[idx];
    if (!(nu > Rat{0})) continue;
    const Rat d = chart.phi_L.coeffs[idx] + chart.m1 * nu;
    if (d.is_integer() && d >= Rat{1}) report.S_components.push_back(j);
  }

  // Reducedness: across m1 each S generator must step by exactly one.  In the
  // diagonal model the pre-jump exponent is d-1 and the post-jump one is d,
  // so a bigger step would indicate corrupted chart data.
  report.reduced = !report.S_components.empty();
  for (int j : report.S_components) {
    const std::size_t idx = static_cast<std::size_t>(j);
    const Rat d = chart.phi_L.coeffs[idx] + chart.m1 * chart.psi.coeffs[idx];
    const std::int64_t below = std::max<std::int64_t>(0, d.floor() - 1);
    const std::int64_t at = generator_exponent(d);
    if (at - below != 1) report.reduced = false;
  }
  return report;
}

std::vector<LcStratum> lc_centres(const JumpReport& report, int sigma) {
  std::vector<LcStratum> out;
  const int s = static_cast<int>(report.S_components.size());
  if (sigma < 0) throw PreconditionError("lc_centres: sigma must be >= 0");
  if (sigma == 0) {
    out.push_back(LcStratum{});  // the ambient stratum
    return out;
  }
  if (sigma > s) return out;  // no lc centres of that codimension

  std::vector<int> pick(static_cast<std::size_t>(sigma));
  // lexicographic subset enumeration
  for (int i = 0; i < sigma; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    LcStratum st;
    st.coords.reserve(static_cast<std::size_t>(sigma));
    for (int i : pick) st.coords.push_back(report.S_components[static_cast<std::size_t>(i)]);
    out.push_back(std::move(st));
    int i = sigma - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == s - sigma + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < sigma; ++k)
      pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

std::vector<int> zero_defect_set(const SncChart& chart, const MonomialSection& f) {
  std::vector<int> z;
  const std::vector<Rat> defects = ideal_defects(chart, f, chart.m1);
  for (int j = 0; j < chart.n; ++j)
    if (defects[static_cast<std::size_t>(j)].is_zero()) z.push_back(j);
  return z;
}

SigmaF sigma_f(const SncChart& chart, const JumpReport& report,
               const MonomialSection& f) {
  const std::vector<Rat> at_m0 = ideal_defects(chart, f, chart.m0);
  for (int j = 0; j < chart.n; ++j) {
    if (at_m0[static_cast<std::size_t>(j)] <= Rat{0})
      throw PreconditionError(
          "sigma_f: section not in I(phi_L + m0*psi); failing coordinate " +
          std::to_string(j + 1));
  }

  std::vector<int> zero = zero_defect_set(chart, f);
  // On a valid chart every zero-defect coordinate is an S-component; keep the
  // intersection anyway so corrupted inputs cannot inflate sigma_f.
  std::vector<int> z;
  for (int j : zero)
    if (std::find(report.S_components.begin(), report.S_components.end(), j) !=
        report.S_components.end())
      z.push_back(j);

  SigmaF result;
  result.sigma = static_cast<int>(z.size());
  LcStratum st;
  st.coords = z;
  if (result.sigma > 0) result.strata.push_back(std::move(st));
  return result;
}

}  // namespace lcm
