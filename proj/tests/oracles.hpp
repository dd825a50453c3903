#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace oracle {

// M_2 = E[(W1 v W2)(W1 ^ W2)^sigma] for i.i.d. Pareto(tau) weights, as a
// nested adaptive double integral over {x > y}, doubled by symmetry.
inline double second_moment_2d(double tau, double sigma) {
  const double shape = tau - 1.0;
  auto density = [shape](double x) { return shape * std::pow(x, -shape - 1.0); };
  boost::math::quadrature::exp_sinh<double> inner_rule;
  boost::math::quadrature::exp_sinh<double> outer_rule;
  auto outer = [&](double y) {
    auto inner = [&](double x) { return x * density(x); };
    const double in = inner_rule.integrate(inner, y, std::numeric_limits<double>::infinity(), 1e-14);
    return 2.0 * std::pow(y, sigma) * density(y) * in;
  };
  return outer_rule.integrate(outer, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
}

// Semicircle Stieltjes transform (x - z)^{-1} convention: the root of
// s^2 + z s + 1 = 0 in the upper half-plane.
inline std::complex<double> semicircle_stieltjes(std::complex<double> z) {
  const auto disc = std::sqrt(z * z - 4.0);
  const auto a = (-z + disc) / 2.0;
  const auto b = (-z - disc) / 2.0;
  return a.imag() > 0.0 ? a : b;
}

// Catalan numbers by the convolution recursion C_{n+1} = sum C_i C_{n-i}.
inline std::uint64_t catalan(int k) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k) + 1, 0);
  c[0] = 1;
  for (int n = 0; n < k; ++n)
    for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(n + 1)] += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(n - i)];
  return c[static_cast<std::size_t>(k)];
}

// c_N by the definition: double loop over ordered pairs of distinct torus
// points, l1 torus distance computed coordinate by coordinate.
inline double scaling_constant_bruteforce(int n, int d, double alpha) {
  const int total = d == 1 ? n : n * n;
  auto coord = [&](int idx, int l) { return l == 0 ? idx / (d == 1 ? 1 : n) % n : idx % n; };
  double sum = 0.0;
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) {
      if (i == j) continue;
      int dist = 0;
      for (int l = 0; l < d; ++l) {
        const int diff = std::abs(coord(i, l) - coord(j, l));
        dist += std::min(diff, n - diff);
      }
      sum += std::pow(static_cast<double>(dist), -alpha);
    }
  return sum / total;
}

// Levy distance by scanning eps on a grid of width `step`. The defining
// inequalities are right-continuous step functions of x, so every violation
// interval starts at a jump: a data point p or p +- eps.
inline double levy_bruteforce(const std::vector<double>& a, const std::vector<double>& b, double step = 1e-4) {
  auto cdf = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [x](double t) { return t <= x; })) /
           static_cast<double>(v.size());
  };
  std::vector<double> pts(a);
  pts.insert(pts.end(), b.begin(), b.end());
  for (double eps = 0.0; eps <= 1.0 + 1e-12; eps += step) {
    bool ok = true;
    for (double p : pts) {
      for (double x : {p, p - eps, p + eps}) {
        const double g = cdf(b, x);
        if (cdf(a, x - eps) - eps > g + 1e-12 || g > cdf(a, x + eps) + eps + 1e-12) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return eps;
  }
  return 1.0;
}

// sup |F - G| from the values and left limits at every atom.
inline double ks_bruteforce(const std::vector<double>& a, const std::vector<double>& b) {
  auto frac = [](const std::vector<double>& v, auto pred) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), pred)) / static_cast<double>(v.size());
  };
  std::vector<double> pts(a);
  pts.insert(pts.end(), b.begin(), b.end());
  double best = 0.0;
  for (double p : pts) {
    auto le = [p](double t) { return t <= p; };
    auto lt = [p](double t) { return t < p; };
    best = std::max(best, std::abs(frac(a, le) - frac(b, le)));
    best = std::max(best, std::abs(frac(a, lt) - frac(b, lt)));
  }
  return best;
}

}  // namespace oracle
