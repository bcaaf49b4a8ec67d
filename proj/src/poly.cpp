#include "heiswhit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heiswhit/errors.hpp"

namespace heiswhit {

namespace {

constexpr double kTrimRatio = 1e-14;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBisectionBudget = 400;

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw DomainViolation("interval requires lo <= hi");
}

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(double c) { return Poly(std::vector<double>{c}); }

Poly Poly::monomial(int k, double c) {
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  double big = 0.0;
  for (double c : coeffs_) big = std::max(big, std::abs(c));
  if (big == 0.0) {
    coeffs_.clear();
    return;
  }
  while (!coeffs_.empty() && std::abs(coeffs_.back()) < kTrimRatio * big) coeffs_.pop_back();
}

double Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::derivative_at(double x, int k) const {
  if (k == 0) return (*this)(x);
  double acc = 0.0;
  for (int j = degree(); j >= k; --j) {
    // falling factorial j (j-1) ... (j-k+1)
    double ff = 1.0;
    for (int i = 0; i < k; ++i) ff *= static_cast<double>(j - i);
    acc = acc * x + ff * coeffs_[static_cast<std::size_t>(j)];
  }
  return acc;
}

Poly Poly::derivative() const {
  if (degree() < 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::derivative(int k) const {
  Poly p = *this;
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p;
}

Poly Poly::antiderivative() const {
  if (is_zero()) return {};
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Poly(std::move(a));
}

Poly Poly::compose_affine(double alpha, double beta) const {
  const Poly inner{beta, alpha};
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + Poly::constant(*it);
  return acc;
}

Poly& Poly::operator+=(const Poly& q) {
  if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] += q.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& q) {
  if (q.coeffs_.size() > coeffs_.size()) coeffs_.resize(q.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) coeffs_[k] -= q.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<double> r(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) r[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return Poly(std::move(r));
}

double Poly::magnitude_at(double x) const {
  const double ax = std::abs(x);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Poly arith(const Poly& p, const Poly& q, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return p + q;
    case ArithKind::sub: return p - q;
    case ArithKind::mul: return p * q;
    case ArithKind::scale: return p * q.coeff(0);
  }
  return {};
}

Poly calculus(const Poly& p, CalculusKind kind) {
  return kind == CalculusKind::derivative ? p.derivative() : p.antiderivative();
}

Poly taylor_from_jet(std::span<const double> jet, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  double fact = 1.0;
  for (int k = 0; k <= order && k < static_cast<int>(jet.size()); ++k) {
    if (k > 0) fact *= k;
    c[static_cast<std::size_t>(k)] = jet[static_cast<std::size_t>(k)] / fact;
  }
  return Poly(std::move(c));
}

double integrate(const Poly& p, const Interval& iv) {
  if (iv.lo == iv.hi || p.is_zero()) return 0.0;
  const Poly anti = p.antiderivative();
  return anti(iv.hi) - anti(iv.lo);
}

namespace {

// Values this small are indistinguishable from rounding noise in Horner.
double noise_floor(const Poly& p, double x) {
  return 16.0 * kEps * static_cast<double>(p.degree() + 1) * p.magnitude_at(x);
}

int noisy_sign(const Poly& p, double x) {
  const double v = p(x);
  if (std::abs(v) <= noise_floor(p, x)) return 0;
  return v > 0.0 ? 1 : -1;
}

double bisect(const Poly& p, double lo, double hi, int sign_lo, double tol) {
  for (int it = 0; it < kBisectionBudget; ++it) {
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    const int s = noisy_sign(p, mid);
    if (s == 0) return mid;
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  throw NonConvergence("bisection budget exhausted while isolating a root");
}

std::vector<double> roots_impl(const Poly& p, double lo, double hi, double tol) {
  const int deg = p.degree();
  std::vector<double> roots;
  if (deg <= 0) return roots;
  if (deg == 1) {
    const double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  // Critical points split [lo, hi] into monotone cells, so every cell holds at
  // most one root and a touching (even multiplicity) root sits on a cell edge.
  const std::vector<double> crit = roots_impl(p.derivative(), lo, hi, tol);

  const int cells = 64 * (deg + 1);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(cells) + 1 + crit.size());
  for (int i = 0; i <= cells; ++i) pts.push_back(lo + (hi - lo) * i / cells);
  pts.back() = hi;
  pts.insert(pts.end(), crit.begin(), crit.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<int> signs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    signs[i] = noisy_sign(p, pts[i]);
    if (signs[i] == 0) roots.push_back(pts[i]);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (signs[i] != 0 && signs[i + 1] != 0 && signs[i] != signs[i + 1])
      roots.push_back(bisect(p, pts[i], pts[i + 1], signs[i], tol));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    const double radius = std::max(4.0 * tol, 1e-9 * std::max(1.0, std::abs(r)));
    if (merged.empty() || r - merged.back() > radius) merged.push_back(r);
  }
  return merged;
}

}  // namespace

std::vector<double> real_roots(const Poly& p, const Interval& iv, double tol) {
  if (p.is_zero()) throw IdenticallyZero("real_roots of the zero polynomial");
  if (!(tol > 0.0)) throw NonConvergence("root tolerance must be positive");
  return roots_impl(p, iv.lo, iv.hi, tol);
}

double abs_integral(const Poly& p, const Interval& iv, double tol) {
  if (p.is_zero() || iv.lo == iv.hi) return 0.0;
  const Poly anti = p.antiderivative();
  double prev = iv.lo;
  double prev_val = anti(prev);
  double total = 0.0;
  auto roots = real_roots(p, iv, tol);
  roots.push_back(iv.hi);
  for (double r : roots) {
    if (r <= prev) continue;
    const double v = anti(r);
    total += std::abs(v - prev_val);
    prev = r;
    prev_val = v;
  }
  return total;
}

}  // namespace heiswhit
