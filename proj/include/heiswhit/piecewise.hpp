#pragma once

#include <cstddef>
#include <vector>

#include "heiswhit/poly.hpp"

namespace heiswhit {

/// One polynomial piece, evaluated as poly(x - origin).
struct PolyPiece {
  double origin = 0.0;
  Poly poly;

  double eval(double x, int k = 0) const { return poly.derivative_at(x - origin, k); }
};

/**
 * Piecewise polynomial on the whole real line.
 *
 * With breakpoints b_0 < ... < b_{n-1} there are n + 1 pieces: piece 0 covers
 * (-inf, b_0), piece i covers [b_{i-1}, b_i) and piece n covers [b_{n-1}, inf).
 * Evaluation at a breakpoint uses the piece to its right. `order` is the
 * number of derivatives the construction promises to match across
 * breakpoints.
 */
class PiecewiseCm {
 public:
  PiecewiseCm() = default;
  PiecewiseCm(std::vector<double> breakpoints, std::vector<PolyPiece> pieces, int order);

  double operator()(double x) const { return eval(x, 0); }
  double eval(double x, int k = 0) const;

  std::size_t piece_index(double x) const;
  /// k-th derivative at breakpoint i from the left and right pieces.
  double left_limit(std::size_t i, int k) const;
  double right_limit(std::size_t i, int k) const;
  /// Largest |left - right| / (1 + local scale) over all breakpoints and
  /// derivative orders 0..max_k. The local scale is the largest |k-th
  /// derivative| seen on the two adjacent pieces (sampled on bounded pieces).
  double max_relative_jump(int max_k) const;
  /// Sampled sup of |k-th derivative| over piece j.
  double local_scale(std::size_t j, int k) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<PolyPiece>& pieces() const { return pieces_; }
  int order() const { return order_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<PolyPiece> pieces_;
  int order_ = 0;
};

}  // namespace heiswhit
