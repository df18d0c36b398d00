#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcm/rational.hpp"

namespace lcm {

// A psh weight in diagonal normal form on a polydisc chart,
//   w(z) = sum_j coeffs_j * log|z_j|^2 + shift,
// with exact rational coefficients.  Smooth remainders are restricted to the
// additive constant `shift` (natural-log units).
struct DiagonalWeight {
  std::vector<Rat> coeffs;
  double shift = 0.0;
};

// Evaluates w at a point given by its moduli squared (|z_1|^2, ..., |z_n|^2).
// A zero modulus against a positive coefficient yields -inf (and +inf against
// a negative one); never a crash.
double eval_weight(const DiagonalWeight& w, std::span<const double> moduli_sq);

// A monomial section  f = amplitude * z^a * bump(r), where the bump is the
// product of per-coordinate radial cutoffs that are identically 1 on
// [0, support_radius/2] and vanish beyond support_radius.
struct MonomialSection {
  std::vector<std::int64_t> exponents;
  double amplitude = 1.0;
  std::vector<double> support_radius;
};

struct MultiMonomialSection {
  std::vector<MonomialSection> terms;  // pairwise distinct exponent vectors
};

// A polydisc chart carrying the whole model set-up: dimension, per-coordinate
// half-edges, the two diagonal weights phi_L and psi, and the jump interval
// [m0, m1).  Charts are immutable values; copy freely across threads.
struct SncChart {
  int n = 0;
  std::vector<double> radii;      // in (0, 1), one per coordinate
  DiagonalWeight phi_L;
  DiagonalWeight psi;             // coeffs >= 0, shift <= 0 (sup psi <= 0)
  Rat m0{0};
  Rat m1{1};
  std::vector<MonomialSection> sections;
};

struct Violation {
  int coordinate = -1;  // 0-based; -1 for chart-level violations
  std::string message;
};

// Reports every violated chart invariant; never throws.  With `check_klt`
// the phi_L coefficients transverse to the jump divisor must be < 1.
std::vector<Violation> validate_chart(const SncChart& chart, bool check_klt = false);

// Per-coordinate defect of a section against the weight phi_L + m*psi,
//   e_j = a_j + 1 - (l_j + m*nu_j),
// all exact.  e_j > 0 for all j is membership in the multiplier ideal.
std::vector<Rat> ideal_defects(const SncChart& chart, const MonomialSection& f,
                               const Rat& m);
bool in_multiplier_ideal(const SncChart& chart, const MonomialSection& f,
                         const Rat& m);

// C^2 radial cutoff: 1 on [0, R/2], quintic-smoothstep decay on [R/2, R],
// 0 beyond.  bump_d1 is its derivative in r.
double bump(double r, double R);
double bump_d1(double r, double R);

// Structural checks on a multi-monomial section (distinct exponent vectors,
// consistent dimensions); returns violations like validate_chart.
std::vector<Violation> validate_section(const SncChart& chart,
                                        const MonomialSection& f);
std::vector<Violation> validate_section(const SncChart& chart,
                                        const MultiMonomialSection& f);

}  // namespace lcm
