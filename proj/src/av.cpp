#include "heiswhit/av.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heiswhit/errors.hpp"

namespace heiswhit {

namespace {

void check_order(const CurveJets& jets, int m) {
  if (m < 1) throw OrderMismatch("A/V functionals need m >= 1");
  if (m > jets.order()) throw OrderMismatch("jets are shorter than the requested order");
}

double velocity_integral(const Poly& pf, const Poly& pg, double lo, double hi) {
  const Interval iv(lo, hi);
  return abs_integral(pf.derivative(), iv) + abs_integral(pg.derivative(), iv);
}

// Discrete A/V from interpolants expressed in (x - origin).
AVPair discrete_from_interpolants(const Poly& pf, const Poly& pg, double origin, double a, double b, double ha,
                                  double hb, double diam, int m) {
  const Poly bracket = pf.derivative() * pg - pg.derivative() * pf;
  const Poly anti = bracket.antiderivative();
  const double ua = a - origin, ub = b - origin;
  AVPair out;
  out.A = hb - ha - 2.0 * (anti(ub) - anti(ua));
  const double dm = std::pow(diam, m);
  out.V = dm * dm + dm * velocity_integral(pf, pg, ua, ub);
  out.ratio = out.A / out.V;
  return out;
}

struct Interpolants {
  Poly f, g;
  double origin;
  double diam;
};

Interpolants interpolate_subset(const SampledCurve& curve, std::span<const std::size_t> subset) {
  const auto& t = curve.nodes();
  std::vector<double> xs, fs, gs;
  for (std::size_t i : subset) {
    xs.push_back(t[i]);
    fs.push_back(curve.component(0)[i]);
    gs.push_back(curve.component(1)[i]);
  }
  const double origin = xs.front();
  return {newton_interp(xs, fs, origin), newton_interp(xs, gs, origin), origin, xs.back() - xs.front()};
}

bool full_scan(const ScanOptions& opts) { return opts.enumeration == Enumeration::full; }

}  // namespace

double area_discrepancy(const CurveJets& jets, std::size_t ia, std::size_t ib, int m) {
  check_order(jets, m);
  const double d = jets.nodes()[ib] - jets.nodes()[ia];
  const Poly tf = taylor_from_jet(jets.f(ia), m);
  const Poly tg = taylor_from_jet(jets.g(ia), m);
  const Poly anti = (tf.derivative() * tg - tg.derivative() * tf).antiderivative();
  const double fa = jets.f(ia)[0], ga = jets.g(ia)[0], ha = jets.h(ia)[0];
  const double fb = jets.f(ib)[0], gb = jets.g(ib)[0], hb = jets.h(ib)[0];
  return hb - ha - 2.0 * anti(d) + 2.0 * fa * (gb - tg(d)) - 2.0 * ga * (fb - tf(d));
}

AVPair av_pair_at(const CurveJets& jets, std::size_t ia, std::size_t ib, int m) {
  check_order(jets, m);
  if (ia >= jets.size() || ib >= jets.size()) throw NodeNotFound("node index out of range");
  const double d = jets.nodes()[ib] - jets.nodes()[ia];
  if (!(d > 0.0)) throw OrderViolation("av_pair requires a < b");
  AVPair out;
  out.A = area_discrepancy(jets, ia, ib, m);
  const double dm = std::pow(d, m);
  out.V = dm * dm + dm * velocity_integral(taylor_from_jet(jets.f(ia), m), taylor_from_jet(jets.g(ia), m), 0.0, d);
  out.ratio = out.A / out.V;
  return out;
}

AVPair av_pair(const CurveJets& jets, double a, double b, int m) {
  const std::size_t ia = jets.index_of(a);
  const std::size_t ib = jets.index_of(b);
  return av_pair_at(jets, ia, ib, m);
}

AVPair discrete_av_pair(const SampledCurve& curve, std::span<const std::size_t> subset, std::size_t ia,
                        std::size_t ib, int m) {
  if (m < 1) throw BadSubset("discrete A/V needs m >= 1");
  if (subset.size() != static_cast<std::size_t>(m) + 1) throw BadSubset("subset must hold exactly m+1 nodes");
  std::vector<std::size_t> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw BadSubset("subset repeats a node");
  if (sorted.back() >= curve.size()) throw BadSubset("subset index out of range");
  if (!std::binary_search(sorted.begin(), sorted.end(), ia) || !std::binary_search(sorted.begin(), sorted.end(), ib))
    throw BadSubset("a and b must belong to the subset");
  const auto& t = curve.nodes();
  if (!(t[ia] < t[ib])) throw BadSubset("discrete A/V requires a < b");
  const Interpolants ip = interpolate_subset(curve, sorted);
  return discrete_from_interpolants(ip.f, ip.g, ip.origin, t[ia], t[ib], curve.component(2)[ia],
                                    curve.component(2)[ib], ip.diam, m);
}

AVPair discrete_av_pair(const SampledCurve& curve, std::span<const double> subset, double a, double b, int m) {
  const auto& t = curve.nodes();
  auto locate = [&](double v) {
    auto it = std::lower_bound(t.begin(), t.end(), v);
    if (it == t.end() || *it != v) throw BadSubset("subset node is not a sample node");
    return static_cast<std::size_t>(it - t.begin());
  };
  std::vector<std::size_t> idx;
  for (double v : subset) idx.push_back(locate(v));
  return discrete_av_pair(curve, idx, locate(a), locate(b), m);
}

RatioProfile av_profile(const CurveJets& jets, int m, const ScanOptions& opts) {
  check_order(jets, m);
  const std::size_t n = jets.size();
  if (n < static_cast<std::size_t>(m) + 1 || n < 2) throw TooFewNodes("A/V profile needs at least m+1 nodes");
  const auto& t = jets.nodes();
  const std::size_t window = effective_window(opts, m, n, full_scan(opts));
  ProfileAccumulator acc(scan_deltas(t, opts));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && j < i + window; ++j)
      acc.add(t[j] - t[i], std::abs(av_pair_at(jets, i, j, m).ratio));
  return acc.cumulative();
}

RatioProfile discrete_av_profile(const SampledCurve& curve, int m, const ScanOptions& opts) {
  if (m < 1) throw BadSubset("discrete A/V needs m >= 1");
  const std::size_t n = curve.size();
  const std::size_t k = static_cast<std::size_t>(m) + 1;
  if (n < k) throw TooFewNodes("discrete A/V profile needs at least m+1 nodes");
  const auto& t = curve.nodes();
  const auto& h = curve.component(2);
  const std::size_t window = effective_window(opts, m, n, full_scan(opts));
  ProfileAccumulator acc(scan_deltas(t, opts));
  for_each_window_subset(n, k, window, [&](std::span<const std::size_t> x) {
    const Interpolants ip = interpolate_subset(curve, x);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) {
        const AVPair av =
            discrete_from_interpolants(ip.f, ip.g, ip.origin, t[x[p]], t[x[q]], h[x[p]], h[x[q]], ip.diam, m);
        acc.add(ip.diam, std::abs(av.ratio));
      }
  });
  return acc.cumulative();
}

std::vector<std::size_t> comparison_subset(std::span<const double> nodes, std::size_t ia, std::size_t ib, int m) {
  const std::size_t n = nodes.size();
  if (n < static_cast<std::size_t>(m) + 1) throw TooFewNodes("not enough nodes for a comparison subset");
  const double a = nodes[ia], b = nodes[ib];
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i)
    if (i != ia && i != ib) others.push_back(i);
  auto dist = [&](std::size_t i) { return std::min(std::abs(nodes[i] - a), std::abs(nodes[i] - b)); };
  std::stable_sort(others.begin(), others.end(), [&](std::size_t i, std::size_t j) { return dist(i) < dist(j); });
  std::vector<std::size_t> x{ia, ib};
  x.insert(x.end(), others.begin(), others.begin() + (m - 1));
  std::sort(x.begin(), x.end());
  return x;
}

EquivalenceReport av_equivalence(const CurveJets& jets, const SampledCurve& curve, int m, const ScanOptions& opts) {
  check_order(jets, m);
  const std::size_t n = curve.size();
  if (jets.size() != n) throw LengthMismatch("jets and samples must share nodes");
  const std::size_t k = static_cast<std::size_t>(m) + 1;
  if (n < k) throw TooFewNodes("equivalence scan needs at least m+1 nodes");
  const auto& t = curve.nodes();
  const auto& h = curve.component(2);
  const std::size_t window = effective_window(opts, m, n, full_scan(opts));
  const std::vector<double> deltas = scan_deltas(t, opts);

  std::vector<double> cont(n * n, std::numeric_limits<double>::quiet_NaN());
  auto continuous = [&](std::size_t i, std::size_t j) {
    double& slot = cont[i * n + j];
    if (std::isnan(slot)) slot = av_pair_at(jets, i, j, m).ratio;
    return slot;
  };

  EquivalenceReport out;
  ProfileAccumulator fwd(deltas);
  for_each_window_subset(n, k, window, [&](std::span<const std::size_t> x) {
    const Interpolants ip = interpolate_subset(curve, x);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) {
        const AVPair av =
            discrete_from_interpolants(ip.f, ip.g, ip.origin, t[x[p]], t[x[q]], h[x[p]], h[x[q]], ip.diam, m);
        const double gap = std::abs(continuous(x[p], x[q]) - av.ratio);
        out.forward_max = std::max(out.forward_max, gap);
        fwd.add(ip.diam, gap);
      }
  });
  out.forward = fwd.cumulative();

  ProfileAccumulator rev(deltas);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && j < i + window; ++j) {
      const auto x = comparison_subset(t, i, j, m);
      const Interpolants ip = interpolate_subset(curve, x);
      const AVPair av = discrete_from_interpolants(ip.f, ip.g, ip.origin, t[i], t[j], h[i], h[j], ip.diam, m);
      const double gap = std::abs(continuous(i, j) - av.ratio);
      out.reverse_max = std::max(out.reverse_max, gap);
      out.max_diameter_factor = std::max(out.max_diameter_factor, ip.diam / (t[j] - t[i]));
      rev.add(t[j] - t[i], gap);
    }
  out.reverse = rev.cumulative();
  return out;
}

}  // namespace heiswhit
