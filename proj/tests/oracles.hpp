#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: exact rational arithmetic for polynomial quantities, a plain
// adaptive Simpson rule for integrals, and closed forms for the fixtures.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;

inline Rat exact(double x) { return Rat(x); }
inline double to_double(const Rat& r) { return static_cast<double>(r); }

struct RPoint {
  Rat x, y, z;
};

inline RPoint mul(const RPoint& p, const RPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 2 * (p.y * q.x - p.x * q.y)};
}

/// Polynomial with ascending coefficients, evaluated exactly.
inline Rat eval(const std::vector<double>& c, const Rat& x) {
  Rat acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + exact(c[i]);
  return acc;
}

inline double eval_d(const std::vector<double>& c, double x) { return to_double(eval(c, exact(x))); }

/// Plain double Horner, for integrands evaluated many times.
inline double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// k-th derivative of an ascending-coefficient polynomial.
inline std::vector<double> deriv(std::vector<double> c, int k = 1) {
  for (int j = 0; j < k; ++j) {
    if (c.empty()) break;
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    c = d;
  }
  return c;
}

/// Exact divided difference by the symmetric formula sum f(x_i) / prod (x_i - x_j).
inline double divided_difference(const std::vector<double>& poly, const std::vector<double>& nodes) {
  Rat sum = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Rat den = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) den *= exact(nodes[i]) - exact(nodes[j]);
    sum += eval(poly, exact(nodes[i])) / den;
  }
  return to_double(sum);
}

/// Exact Lagrange interpolant value at x through (nodes, values).
inline double lagrange(const std::vector<double>& nodes, const std::vector<double>& values, double x) {
  Rat sum = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Rat term = exact(values[i]);
    for (std::size_t j = 0; j < nodes.size(); ++j)
      if (j != i) term *= (exact(x) - exact(nodes[j])) / (exact(nodes[i]) - exact(nodes[j]));
    sum += term;
  }
  return to_double(sum);
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Splits [a, b] into n equal parts before Simpson, so kinks of |p| are resolved.
inline double simpson_split(const std::function<double(double)>& f, double a, double b, int n = 64) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += simpson(f, a + (b - a) * i / n, a + (b - a) * (i + 1) / n, 1e-14);
  return s;
}

/// Continuous A and V for a polynomial curve with Taylor polynomials at a,
/// written out from the definitions with Simpson quadrature.
struct AV {
  double A, V;
};

inline double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline std::vector<double> taylor_coeffs(const std::vector<double>& poly, double a, int m) {
  std::vector<double> t;
  for (int k = 0; k <= m; ++k) t.push_back(eval_d(deriv(poly, k), a) / factorial(k));
  return t;  // in the variable (x - a)
}

inline AV av_polynomial_curve(const std::vector<double>& f, const std::vector<double>& g,
                              const std::vector<double>& h, double a, double b, int m) {
  const auto tf = taylor_coeffs(f, a, m), tg = taylor_coeffs(g, a, m);
  const auto dtf = deriv(tf), dtg = deriv(tg);
  const auto bracket = [&](double x) {
    const double u = x - a;
    return eval_d(dtf, u) * eval_d(tg, u) - eval_d(dtg, u) * eval_d(tf, u);
  };
  const double d = b - a;
  const double fa = eval_d(f, a), ga = eval_d(g, a), fb = eval_d(f, b), gb = eval_d(g, b);
  const double A = eval_d(h, b) - eval_d(h, a) - 2 * simpson_split(bracket, a, b) +
                   2 * fa * (gb - eval_d(tg, d)) - 2 * ga * (fb - eval_d(tf, d));
  const double speed = simpson_split([&](double x) { return std::abs(eval_d(dtf, x - a)) + std::abs(eval_d(dtg, x - a)); },
                                     a, b, 256);
  return {A, std::pow(d, 2 * m) + std::pow(d, m) * speed};
}

inline std::vector<double> random_poly(std::mt19937_64& rng, int degree, double amp = 1.0) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = u(rng);
  return c;
}

inline std::vector<double> random_sorted_nodes(std::mt19937_64& rng, std::size_t n, double lo, double hi,
                                               double min_gap = 1e-3) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> t(n);
    for (auto& x : t) x = u(rng);
    std::sort(t.begin(), t.end());
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && t[i] - t[i - 1] >= min_gap;
    if (ok) return t;
  }
}

}  // namespace oracle
