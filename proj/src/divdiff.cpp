#include "heiswhit/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heiswhit/errors.hpp"

namespace heiswhit {

SampledCurve::SampledCurve(std::vector<double> nodes, std::vector<HPoint> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() != values_.size()) throw LengthMismatch("one sample per node required");
  if (nodes_.size() < 2) throw TooFewNodes("a sampled curve needs at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& v = values_[i];
    if (!std::isfinite(nodes_[i]) || !std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
      throw NonFinite("sample values must be finite");
    if (i > 0 && !(nodes_[i - 1] < nodes_[i])) throw DuplicateNodes("nodes must be strictly increasing");
  }
  for (auto& c : components_) c.reserve(values_.size());
  for (const auto& v : values_) {
    components_[0].push_back(v.x);
    components_[1].push_back(v.y);
    components_[2].push_back(v.z);
  }
}

SampledCurve SampledCurve::from_unsorted(std::vector<double> nodes, std::vector<HPoint> values) {
  if (nodes.size() != values.size()) throw LengthMismatch("one sample per node required");
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return nodes[i] < nodes[j]; });
  std::vector<double> sn;
  std::vector<HPoint> sv;
  for (std::size_t i : order) {
    if (!sn.empty() && sn.back() == nodes[i]) throw DuplicateNodes("repeated node t");
    sn.push_back(nodes[i]);
    sv.push_back(values[i]);
  }
  return SampledCurve(std::move(sn), std::move(sv));
}

double SampledCurve::scale() const {
  double big = 0.0;
  for (const auto& v : values_) big = std::max({big, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  return 1.0 + big;
}

SampledCurve left_translate(const HPoint& p, const SampledCurve& curve) {
  std::vector<HPoint> moved;
  moved.reserve(curve.size());
  for (const auto& v : curve.values()) moved.push_back(p * v);
  return SampledCurve(curve.nodes(), std::move(moved));
}

namespace {

struct SortedData {
  std::vector<double> x, y;
};

SortedData sort_distinct(std::span<const double> values, std::span<const double> nodes) {
  if (values.size() != nodes.size()) throw LengthMismatch("values and nodes differ in length");
  if (nodes.empty()) throw TooFewNodes("divided difference of no nodes");
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return nodes[i] < nodes[j]; });
  SortedData d;
  for (std::size_t i : order) {
    if (!d.x.empty() && d.x.back() == nodes[i]) throw DuplicateNodes("divided differences need distinct nodes");
    d.x.push_back(nodes[i]);
    d.y.push_back(values[i]);
  }
  return d;
}

// In place: on return coef[k] = f[x_0, ..., x_k].
void newton_coefficients(const std::vector<double>& x, std::vector<double>& coef) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) coef[i] = (coef[i] - coef[i - 1]) / (x[i] - x[i - level]);
}

// 15-point Gauss-Kronrod rule with embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr long kEvaluationBudget = 50'000'000;

class SimplexIntegrator {
 public:
  SimplexIntegrator(const std::function<double(double)>& fm, std::span<const double> nodes, double tol)
      : fm_(fm), nodes_(nodes.begin(), nodes.end()), tol_(tol) {}

  double run() {
    if (nodes_.size() == 1) return fm_(nodes_[0]);
    return level(1, 1.0, nodes_[0], tol_);
  }

 private:
  // Integrates over t_j in [0, upper]; `base` already holds x_0 + sum_{i<j} t_i (x_i - x_{i-1}).
  double level(std::size_t j, double upper, double base, double tol) {
    const double step = nodes_[j] - nodes_[j - 1];
    auto integrand = [&](double t) {
      const double arg = base + t * step;
      if (j + 1 == nodes_.size()) {
        if (++evaluations_ > kEvaluationBudget)
          throw QuadratureBudgetExceeded("simplex quadrature exceeded its evaluation budget");
        return fm_(arg);
      }
      return level(j + 1, t, arg, 0.5 * tol);
    };
    return adaptive(integrand, 0.0, upper, tol, 0);
  }

  template <class F>
  double adaptive(F& f, double a, double b, double tol, int depth) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double kron = kWgk[7] * f(c);
    double gauss = kWg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
      const double dx = h * kXgk[i];
      const double s = f(c - dx) + f(c + dx);
      kron += kWgk[i] * s;
      if (i % 2 == 1) gauss += kWg[i / 2] * s;
    }
    kron *= h;
    gauss *= h;
    const double err = std::abs(kron - gauss);
    if (err <= std::max(tol, 1e-15 * std::abs(kron)) || h == 0.0) return kron;
    if (depth >= 48) throw QuadratureBudgetExceeded("simplex quadrature failed to converge");
    return adaptive(f, a, c, 0.5 * tol, depth + 1) + adaptive(f, c, b, 0.5 * tol, depth + 1);
  }

  const std::function<double(double)>& fm_;
  std::vector<double> nodes_;
  double tol_;
  long evaluations_ = 0;
};

}  // namespace

double divided_difference(std::span<const double> values, std::span<const double> nodes) {
  SortedData d = sort_distinct(values, nodes);
  newton_coefficients(d.x, d.y);
  return d.y.back();
}

double hermite_genocchi(const std::function<double(double)>& kth_derivative, std::span<const double> nodes,
                        double tol) {
  if (nodes.empty()) throw TooFewNodes("Hermite-Genocchi needs at least one node");
  SimplexIntegrator integrator(kth_derivative, nodes, tol);
  return integrator.run();
}

Poly newton_interp(std::span<const double> nodes, std::span<const double> values, double origin) {
  SortedData d = sort_distinct(values, nodes);
  for (double& x : d.x) x -= origin;
  newton_coefficients(d.x, d.y);
  const std::size_t n = d.x.size();
  Poly p = Poly::constant(d.y[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) p = p * Poly{-d.x[i], 1.0} + Poly::constant(d.y[i]);
  return p;
}

DecayProfile dd_profile(std::span<const double> nodes, std::span<const double> values, int m,
                        const ScanOptions& opts) {
  const std::size_t n = nodes.size();
  if (m < 0 || n < static_cast<std::size_t>(m) + 2)
    throw TooFewNodes("divided-difference profile needs at least m+2 nodes");
  if (values.size() != n) throw LengthMismatch("values and nodes differ in length");
  const bool full = opts.enumeration == Enumeration::full;
  const std::size_t window = effective_window(opts, m, n, full);
  const std::size_t k = static_cast<std::size_t>(m) + 1;
  ProfileAccumulator acc(scan_deltas(nodes, opts));

  struct Entry {
    std::size_t lo, hi;
    double dd;
  };
  std::vector<Entry> entries;
  std::vector<double> xs(k), ys(k);
  const std::size_t starts = full ? 1 : n - window + 1;
  for (std::size_t w = 0; w < starts; ++w) {
    entries.clear();
    for_each_window_subset(window, k, window, [&](std::span<const std::size_t> idx) {
      for (std::size_t i = 0; i < k; ++i) {
        xs[i] = nodes[w + idx[i]];
        ys[i] = values[w + idx[i]];
      }
      entries.push_back({w + idx.front(), w + idx.back(), divided_difference(ys, xs)});
    });
    for (std::size_t a = 0; a < entries.size(); ++a)
      for (std::size_t b = a + 1; b < entries.size(); ++b) {
        const std::size_t lo = std::min(entries[a].lo, entries[b].lo);
        const std::size_t hi = std::max(entries[a].hi, entries[b].hi);
        acc.add(nodes[hi] - nodes[lo], std::abs(entries[a].dd - entries[b].dd));
      }
  }
  return acc.cumulative();
}

std::array<DecayProfile, 3> dd_profile(const SampledCurve& curve, int m, const ScanOptions& opts) {
  return {dd_profile(curve.nodes(), curve.component(0), m, opts),
          dd_profile(curve.nodes(), curve.component(1), m, opts),
          dd_profile(curve.nodes(), curve.component(2), m, opts)};
}

}  // namespace heiswhit
