#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace heiswhit {

struct ProfilePoint {
  double delta = 0.0;
  double value = 0.0;
};

/// Scale-indexed evidence: for each delta (strictly decreasing) the sup of a
/// nonnegative quantity over all work items of scale <= delta. Scales that no
/// item reaches are omitted.
struct Profile {
  std::vector<ProfilePoint> points;

  bool empty() const { return points.empty(); }
  /// Value at the smallest delta, or 0 for an empty profile.
  double terminal() const { return points.empty() ? 0.0 : points.back().value; }
  double max_value() const;
};

using DecayProfile = Profile;
using RatioProfile = Profile;

enum class Enumeration {
  automatic,  // windowed, except where a scan documents a small-input override
  windowed,
  full,
};

/// Knobs shared by every subset or pair scan.
struct ScanOptions {
  int window = 0;  // consecutive-node window width; 0 means 2m + 4
  Enumeration enumeration = Enumeration::automatic;
  double delta_ratio = 0.5;
  std::vector<double> deltas;  // explicit decreasing grid; overrides the geometric one
};

/// Window width actually used for a scan over n nodes at order m.
std::size_t effective_window(const ScanOptions& opts, int m, std::size_t n, bool full);

/// Geometric grid from diam(nodes) down to the smallest gap, ratio `ratio`.
std::vector<double> delta_grid(std::span<const double> nodes, double ratio);
/// The explicit grid in `opts` if any, otherwise delta_grid(nodes, opts.delta_ratio).
std::vector<double> scan_deltas(std::span<const double> nodes, const ScanOptions& opts);

/// Collects (scale, value) work items into cumulative and per-band sups over
/// a fixed decreasing delta grid.
class ProfileAccumulator {
 public:
  explicit ProfileAccumulator(std::vector<double> deltas);

  void add(double scale, double value);
  /// sup over items with scale <= delta; coarse entries that add nothing past
  /// the first delta covering every item are dropped.
  Profile cumulative() const;
  /// sup over items with delta_{k+1} < scale <= delta_k.
  Profile band() const;
  std::size_t count() const { return count_; }

 private:
  std::size_t bin_of(double scale) const;

  std::vector<double> deltas_;
  std::vector<double> bin_max_;
  std::vector<bool> bin_used_;
  double max_scale_ = 0.0;
  std::size_t count_ = 0;
};

/// Calls fn(indices) once for every k-subset of {0..n-1} (sorted indices)
/// whose members all fit in some run of `window` consecutive indices.
void for_each_window_subset(std::size_t n, std::size_t k, std::size_t window,
                            const std::function<void(std::span<const std::size_t>)>& fn);

/// Least-squares slope of log(value) against log(delta) over the entries with
/// delta <= 10^decades * min delta. Values are floored at `floor` (> 0).
/// NaN when fewer than two entries qualify.
double fit_loglog_slope(const Profile& profile, double floor, double decades = 3.0);

}  // namespace heiswhit
