#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace lcm {

// Gauss-Legendre rule on [-1, 1]; nodes ascending.  Cached per order.
const std::pair<Eigen::ArrayXd, Eigen::ArrayXd>& gauss_legendre(int order);

// Appends the rule mapped to [a, b] as (node, weight) pairs.
void append_gl_panel(double a, double b, int order,
                     std::vector<std::pair<double, double>>& out);

// Sum with a fixed pairwise-reduction tree, independent of how the values
// were produced; this is what makes results bit-identical across thread
// counts.
double pairwise_sum(std::span<const double> values);

// Evaluates fn(i) for i in [0, count) in fixed-size blocks, each block summed
// sequentially in index order, blocks reduced pairwise.  `threads` only
// changes who computes which block, never the arithmetic.
double blocked_sum(std::size_t count, int threads,
                   const std::function<double(std::size_t)>& fn);

struct Extrapolation {
  double value = 0.0;
  double residual = 0.0;  // |last Neville correction|, a crude error gauge
};

// Polynomial (Neville) extrapolation of samples (x_i, v_i) to x = 0.
Extrapolation neville_to_zero(std::span<const double> x, std::span<const double> v);

}  // namespace lcm
