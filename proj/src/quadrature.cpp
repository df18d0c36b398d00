#include "lcm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lcm {

namespace {

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> compute_gl(int n) {
  // Newton on P_n with the classic Chebyshev-based initial guess.
  Eigen::ArrayXd x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[n - 1 - i] = z;
    w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return {x, w};
}

}  // namespace

const std::pair<Eigen::ArrayXd, Eigen::ArrayXd>& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, std::pair<Eigen::ArrayXd, Eigen::ArrayXd>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

void append_gl_panel(double a, double b, int order,
                     std::vector<std::pair<double, double>>& out) {
  const auto& [x, w] = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i)
    out.emplace_back(mid + half * x[i], half * w[i]);
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

double blocked_sum(std::size_t count, int threads,
                   const std::function<double(std::size_t)>& fn) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);

  auto run_block = [&](std::size_t b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(lo + kBlock, count);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    partial[b] = s;
  };

  if (threads <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    const int nt = std::min<std::size_t>(static_cast<std::size_t>(threads), blocks);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = static_cast<std::size_t>(t); b < blocks;
             b += static_cast<std::size_t>(nt))
          run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }
  return pairwise_sum(partial);
}

Extrapolation neville_to_zero(std::span<const double> x, std::span<const double> v) {
  const std::size_t n = x.size();
  if (n == 0 || v.size() != n)
    throw std::invalid_argument("neville_to_zero: bad sample arrays");
  std::vector<double> t(v.begin(), v.end());
  double prev = t[n - 1];
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const double xi = x[i];
      const double xij = x[i - j];
      t[i] = (xij * t[i] - xi * t[i - 1]) / (xij - xi);
      if (i == j) break;
    }
    prev = (j + 1 < n) ? t[n - 1] : prev;
  }
  Extrapolation e;
  e.value = t[n - 1];
  e.residual = std::abs(t[n - 1] - prev);
  if (n == 1) e.residual = std::abs(t[0]);
  return e;
}

}  // namespace lcm
