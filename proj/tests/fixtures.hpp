#pragma once

#include <cmath>
#include <vector>

#include "heiswhit/divdiff.hpp"
#include "heiswhit/heisenberg.hpp"

namespace fixture {

using heiswhit::CurveJets;
using heiswhit::HPoint;
using heiswhit::SampledCurve;

inline std::vector<double> uniform(int n, double lo = 0.0, double hi = 1.0) {
  std::vector<double> t;
  for (int i = 0; i < n; ++i) t.push_back(lo + (hi - lo) * i / (n - 1));
  return t;
}

template <class F>
SampledCurve sample(int n, F&& gamma, double lo = 0.0, double hi = 1.0) {
  std::vector<double> t = uniform(n, lo, hi);
  std::vector<HPoint> v;
  for (double s : t) v.push_back(gamma(s));
  return SampledCurve(t, v);
}

// (cos t, sin t, -2t): horizontal, h' = 2(f'g - fg') = -2.
inline HPoint circle(double t) { return {std::cos(t), std::sin(t), -2.0 * t}; }
// (t, 0, t): not horizontal, h' = 1 against 0.
inline HPoint ttt(double t) { return {t, 0.0, t}; }
// (t, t^2, -2t^3/3) and (t^2, t^3, -2t^5/5), both horizontal.
inline HPoint cubic(double t) { return {t, t * t, -2.0 * t * t * t / 3.0}; }
inline HPoint quintic(double t) { return {t * t, t * t * t, -0.4 * std::pow(t, 5)}; }

inline SampledCurve circle_samples(int n) { return sample(n, circle); }
inline SampledCurve ttt_samples(int n) { return sample(n, ttt); }

/// Exact jets of the circle curve through order m.
inline CurveJets circle_jets(const std::vector<double>& t, int m) {
  std::vector<std::vector<double>> f, g, h;
  for (double s : t) {
    std::vector<double> fj, gj, hj;
    for (int k = 0; k <= m; ++k) {
      fj.push_back(std::cos(s + k * M_PI / 2));
      gj.push_back(std::sin(s + k * M_PI / 2));
      hj.push_back(k == 0 ? -2.0 * s : (k == 1 ? -2.0 : 0.0));
    }
    f.push_back(fj);
    g.push_back(gj);
    h.push_back(hj);
  }
  return CurveJets(t, f, g, h);
}

}  // namespace fixture
