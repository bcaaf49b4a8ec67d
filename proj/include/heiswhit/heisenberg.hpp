#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "heiswhit/errors.hpp"
#include "heiswhit/piecewise.hpp"

namespace heiswhit {

/// A point (x, y, z) of the first Heisenberg group.
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const HPoint&, const HPoint&) = default;
};

/// (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+2(yx'-xy')).
HPoint group_mul(const HPoint& p, const HPoint& q);
inline HPoint operator*(const HPoint& p, const HPoint& q) { return group_mul(p, q); }
HPoint inverse(const HPoint& p);
/// delta_r(x,y,z) = (rx, ry, r^2 z); throws ZeroDilation for r == 0.
HPoint dilate(double r, const HPoint& p);
/// Horizontal points are those with z == 0 (up to tol).
bool is_horizontal(const HPoint& p, double tol = 1e-12);
double distance(const HPoint& p, const HPoint& q);

/// Point of the n-th Heisenberg group, for the group law only. Everything
/// that works with curves is specialized to n = 1.
template <std::size_t N>
struct HPointN {
  std::array<double, N> x{};
  std::array<double, N> y{};
  double z = 0.0;
};

template <std::size_t N>
HPointN<N> group_mul(const HPointN<N>& p, const HPointN<N>& q) {
  HPointN<N> r;
  r.z = p.z + q.z;
  for (std::size_t j = 0; j < N; ++j) {
    r.x[j] = p.x[j] + q.x[j];
    r.y[j] = p.y[j] + q.y[j];
    r.z += 2.0 * (p.y[j] * q.x[j] - p.x[j] * q.y[j]);
  }
  return r;
}

template <std::size_t N>
HPointN<N> inverse(const HPointN<N>& p) {
  HPointN<N> r;
  for (std::size_t j = 0; j < N; ++j) {
    r.x[j] = -p.x[j];
    r.y[j] = -p.y[j];
  }
  r.z = -p.z;
  return r;
}

template <std::size_t N>
HPointN<N> dilate(double r, const HPointN<N>& p) {
  if (r == 0.0) throw ZeroDilation("dilation factor must be nonzero");
  HPointN<N> q;
  for (std::size_t j = 0; j < N; ++j) {
    q.x[j] = r * p.x[j];
    q.y[j] = r * p.y[j];
  }
  q.z = r * r * p.z;
  return q;
}

/// Pansu difference quotient delta_{1/(b-a)}(gamma(a)^{-1} * gamma(b)).
HPoint pansu_dq(const HPoint& ga, const HPoint& gb, double a, double b);

/// Derivatives (H^1, ..., H^m) of the height forced by horizontality:
/// H^k = 2 sum_{i<k} C(k-1, i) (F^{k-i} G^i - G^{k-i} F^i).
std::vector<double> leibniz_stack(std::span<const double> fjet, std::span<const double> gjet, int m);

/**
 * Jets (F^k, G^k, H^k), k = 0..m, of a curve into H prescribed on a strictly
 * increasing node list.
 */
class CurveJets {
 public:
  CurveJets() = default;
  CurveJets(std::vector<double> nodes, std::vector<std::vector<double>> f,
            std::vector<std::vector<double>> g, std::vector<std::vector<double>> h);

  std::size_t size() const { return nodes_.size(); }
  int order() const { return order_; }
  const std::vector<double>& nodes() const { return nodes_; }
  std::span<const double> f(std::size_t i) const { return f_[i]; }
  std::span<const double> g(std::size_t i) const { return g_[i]; }
  std::span<const double> h(std::size_t i) const { return h_[i]; }
  HPoint point(std::size_t i) const { return {f_[i][0], g_[i][0], h_[i][0]}; }
  /// Index of node t; throws NodeNotFound.
  std::size_t index_of(double t) const;
  double max_magnitude() const;

 private:
  std::vector<double> nodes_;
  std::vector<std::vector<double>> f_, g_, h_;
  int order_ = 0;
};

/// Jets of p * gamma: f -> f + x0, g -> g + y0, h -> z0 + h + 2(y0 f - x0 g).
CurveJets left_translate(const HPoint& p, const CurveJets& jets);

/// Default tolerance for horizontality checks: 1e-9 (1 + magnitude).
inline double horizontality_tolerance(double magnitude) { return 1e-9 * (1.0 + magnitude); }

/// max over grid of |h'(t) - 2(f'(t) g(t) - f(t) g'(t))|. Grid points must lie
/// in [domain.lo, domain.hi] when a domain is given.
double horizontality_defect(const PiecewiseCm& f, const PiecewiseCm& g, const PiecewiseCm& h,
                            std::span<const double> grid);
double horizontality_defect(const PiecewiseCm& f, const PiecewiseCm& g, const PiecewiseCm& h,
                            std::span<const double> grid, const Interval& domain);

}  // namespace heiswhit
