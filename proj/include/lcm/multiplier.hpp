#pragma once

#include <cstdint>
#include <vector>

#include "lcm/chart.hpp"
#include "lcm/rational.hpp"

namespace lcm {

// Monomial ideal given by the antichain of its minimal generator exponents.
// For diagonal weights the multiplier ideal is principal: one generator.
struct MonomialIdeal {
  std::vector<std::vector<std::int64_t>> generators;

  [[nodiscard]] bool is_principal() const { return generators.size() == 1; }
};

// a divides b componentwise.
bool divides(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

// Drops generators dominated by another one and sorts; the result is an
// antichain under componentwise <=.
MonomialIdeal antichain(std::vector<std::vector<std::int64_t>> generators);

// Multiplier ideal of a diagonal weight: the principal ideal with generator
// exponents  g_j = min{ a in Z>=0 : a > c_j - 1 }, decided exactly.
MonomialIdeal multiplier_ideal(const DiagonalWeight& w);

// Generator of the multiplier ideal of phi_L + m*psi.
std::vector<std::int64_t> ideal_generator(const SncChart& chart, const Rat& m);

struct JumpReport {
  std::vector<Rat> jumps;           // strictly increasing, in (0, m_max]
  std::vector<int> S_components;    // 0-based coordinates carrying the m1 jump
  bool reduced = false;             // each S generator increments by exactly 1 at m1
  bool m1_is_jump = false;
  std::vector<Rat> interior_jumps;  // jumps strictly inside (m0, m1): chart defect
};

// Exact jumping numbers of the family m -> I(phi_L + m*psi) up to m_max.
// A coordinate contributes the jump (k - l_j)/nu_j for every integer
// k > l_j with k >= 1 (nu_j > 0; coordinates with nu_j = 0 never jump).
// m1 not being a jump, or extra jumps inside (m0, m1), are flagged in the
// report rather than thrown.
JumpReport jumping_numbers(const SncChart& chart, const Rat& m_max);

struct LcStratum {
  std::vector<int> coords;                 // subset of S_components, 0-based
  [[nodiscard]] int codim() const { return static_cast<int>(coords.size()); }
};

// All sigma-element subsets of the S-components; sigma = 0 yields the single
// ambient stratum, sigma > |S| an empty list.
std::vector<LcStratum> lc_centres(const JumpReport& report, int sigma);

struct SigmaF {
  int sigma = 0;
  std::vector<LcStratum> strata;  // realizing strata (zero-defect coordinate sets)
};

// Codimension of the minimal lc centres met by f:  the number of S-components
// with zero defect a_j + 1 - l_j - m1*nu_j = 0 (exact test).  Throws
// PreconditionError naming the failing coordinate if f is not in
// I(phi_L + m0*psi).
SigmaF sigma_f(const SncChart& chart, const JumpReport& report,
               const MonomialSection& f);

// Zero-defect coordinate set of a single term at m1 (no report needed).
std::vector<int> zero_defect_set(const SncChart& chart, const MonomialSection& f);

}  // namespace lcm
