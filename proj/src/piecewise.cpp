#include "heiswhit/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "heiswhit/errors.hpp"

namespace heiswhit {

PiecewiseCm::PiecewiseCm(std::vector<double> breakpoints, std::vector<PolyPiece> pieces, int order)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), order_(order) {
  if (pieces_.size() != breakpoints_.size() + 1)
    throw LengthMismatch("piecewise function needs one more piece than breakpoints");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i - 1] < breakpoints_[i]))
      throw DuplicateNodes("breakpoints must be strictly increasing");
}

std::size_t PiecewiseCm::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

double PiecewiseCm::eval(double x, int k) const { return pieces_[piece_index(x)].eval(x, k); }

double PiecewiseCm::left_limit(std::size_t i, int k) const {
  return pieces_.at(i).eval(breakpoints_.at(i), k);
}

double PiecewiseCm::right_limit(std::size_t i, int k) const {
  return pieces_.at(i + 1).eval(breakpoints_.at(i), k);
}

double PiecewiseCm::local_scale(std::size_t j, int k) const {
  // unbounded end pieces only contribute their value at the breakpoint
  if (j == 0 || j == pieces_.size() - 1) {
    const std::size_t i = j == 0 ? 0 : breakpoints_.size() - 1;
    return std::abs(pieces_[j].eval(breakpoints_[i], k));
  }
  const double lo = breakpoints_[j - 1], hi = breakpoints_[j];
  constexpr int kSamples = 16;
  double big = 0.0;
  for (int s = 0; s <= kSamples; ++s) big = std::max(big, std::abs(pieces_[j].eval(lo + (hi - lo) * s / kSamples, k)));
  return big;
}

double PiecewiseCm::max_relative_jump(int max_k) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    for (int k = 0; k <= max_k; ++k) {
      const double l = left_limit(i, k), r = right_limit(i, k);
      const double scale = 1.0 + std::max({std::abs(l), std::abs(r), local_scale(i, k), local_scale(i + 1, k)});
      worst = std::max(worst, std::abs(l - r) / scale);
    }
  return worst;
}

}  // namespace heiswhit
