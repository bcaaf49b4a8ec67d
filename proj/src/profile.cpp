#include "heiswhit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heiswhit/errors.hpp"

namespace heiswhit {

double Profile::max_value() const {
  double v = 0.0;
  for (const auto& p : points) v = std::max(v, p.value);
  return v;
}

std::size_t effective_window(const ScanOptions& opts, int m, std::size_t n, bool full) {
  if (full) return n;
  const std::size_t w = opts.window > 0 ? static_cast<std::size_t>(opts.window)
                                        : static_cast<std::size_t>(2 * m + 4);
  return std::min(w, n);
}

std::vector<double> delta_grid(std::span<const double> nodes, double ratio) {
  if (nodes.size() < 2) throw TooFewNodes("delta grid needs at least two nodes");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("delta ratio must lie in (0, 1)");
  const double diam = nodes.back() - nodes.front();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes.size(); ++i) min_gap = std::min(min_gap, nodes[i] - nodes[i - 1]);
  std::vector<double> grid;
  // the relative slack keeps a delta that lands on the smallest gap in the grid
  for (double d = diam; d >= min_gap * (1.0 - 1e-12); d *= ratio) grid.push_back(d);
  return grid;
}

std::vector<double> scan_deltas(std::span<const double> nodes, const ScanOptions& opts) {
  if (opts.deltas.empty()) return delta_grid(nodes, opts.delta_ratio);
  for (std::size_t i = 1; i < opts.deltas.size(); ++i)
    if (!(opts.deltas[i] < opts.deltas[i - 1])) throw ConfigError("explicit delta grid must decrease");
  return opts.deltas;
}

ProfileAccumulator::ProfileAccumulator(std::vector<double> deltas)
    : deltas_(std::move(deltas)), bin_max_(deltas_.size(), 0.0), bin_used_(deltas_.size(), false) {}

std::size_t ProfileAccumulator::bin_of(double scale) const {
  // largest k with deltas_[k] >= scale; deltas_ is decreasing
  auto it = std::partition_point(deltas_.begin(), deltas_.end(), [scale](double d) { return d >= scale; });
  return static_cast<std::size_t>(it - deltas_.begin());  // one past the last covering delta
}

void ProfileAccumulator::add(double scale, double value) {
  const std::size_t past = bin_of(scale);
  if (past == 0) return;  // coarser than every delta
  const std::size_t k = past - 1;
  if (!bin_used_[k] || value > bin_max_[k]) bin_max_[k] = value;
  bin_used_[k] = true;
  max_scale_ = std::max(max_scale_, scale);
  ++count_;
}

Profile ProfileAccumulator::cumulative() const {
  Profile out;
  const std::size_t n = deltas_.size();
  std::vector<double> suffix(n, 0.0);
  std::vector<bool> any(n, false);
  double run = 0.0;
  bool seen = false;
  for (std::size_t k = n; k-- > 0;) {
    if (bin_used_[k]) {
      run = seen ? std::max(run, bin_max_[k]) : bin_max_[k];
      seen = true;
    }
    suffix[k] = run;
    any[k] = seen;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!any[k]) continue;
    if (k + 1 < n && deltas_[k + 1] >= max_scale_) continue;
    out.points.push_back({deltas_[k], suffix[k]});
  }
  return out;
}

Profile ProfileAccumulator::band() const {
  Profile out;
  for (std::size_t k = 0; k < deltas_.size(); ++k)
    if (bin_used_[k]) out.points.push_back({deltas_[k], bin_max_[k]});
  return out;
}

namespace {

void subsets_rec(std::size_t n, std::size_t k, std::size_t last_allowed, std::vector<std::size_t>& cur,
                 const std::function<void(std::span<const std::size_t>)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  const std::size_t need = k - cur.size();
  for (std::size_t j = cur.back() + 1; j <= last_allowed && j + need <= n; ++j) {
    cur.push_back(j);
    subsets_rec(n, k, last_allowed, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

void for_each_window_subset(std::size_t n, std::size_t k, std::size_t window,
                            const std::function<void(std::span<const std::size_t>)>& fn) {
  if (k == 0 || k > n || window < k) return;
  std::vector<std::size_t> cur;
  cur.reserve(k);
  for (std::size_t first = 0; first + k <= n; ++first) {
    cur.assign(1, first);
    subsets_rec(n, k, std::min(n - 1, first + window - 1), cur, fn);
  }
}

double fit_loglog_slope(const Profile& profile, double floor, double decades) {
  if (profile.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double cutoff = profile.points.back().delta * std::pow(10.0, decades);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : profile.points) {
    if (p.delta > cutoff) continue;
    const double x = std::log(p.delta);
    const double y = std::log(std::max(p.value, floor));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

}  // namespace heiswhit
