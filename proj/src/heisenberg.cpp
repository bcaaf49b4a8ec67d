#include "heiswhit/heisenberg.hpp"

#include <algorithm>
#include <cmath>

namespace heiswhit {

HPoint group_mul(const HPoint& p, const HPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 2.0 * (p.y * q.x - p.x * q.y)};
}

HPoint inverse(const HPoint& p) { return {-p.x, -p.y, -p.z}; }

HPoint dilate(double r, const HPoint& p) {
  if (r == 0.0) throw ZeroDilation("dilation factor must be nonzero");
  return {r * p.x, r * p.y, r * r * p.z};
}

bool is_horizontal(const HPoint& p, double tol) { return std::abs(p.z) <= tol; }

double distance(const HPoint& p, const HPoint& q) {
  return std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) + (p.z - q.z) * (p.z - q.z));
}

HPoint pansu_dq(const HPoint& ga, const HPoint& gb, double a, double b) {
  if (a == b) throw CoincidentNodes("Pansu difference quotient needs a != b");
  return dilate(1.0 / (b - a), inverse(ga) * gb);
}

std::vector<double> leibniz_stack(std::span<const double> fjet, std::span<const double> gjet, int m) {
  if (m < 0 || fjet.size() < static_cast<std::size_t>(m) + 1 ||
      gjet.size() < static_cast<std::size_t>(m) + 1)
    throw LengthMismatch("leibniz_stack needs jets of length at least m+1");
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    double acc = 0.0;
    double binom = 1.0;  // C(k-1, i)
    for (int i = 0; i <= k - 1; ++i) {
      acc += binom * (fjet[k - i] * gjet[i] - gjet[k - i] * fjet[i]);
      binom = binom * (k - 1 - i) / (i + 1);
    }
    out[static_cast<std::size_t>(k - 1)] = 2.0 * acc;
  }
  return out;
}

CurveJets::CurveJets(std::vector<double> nodes, std::vector<std::vector<double>> f,
                     std::vector<std::vector<double>> g, std::vector<std::vector<double>> h)
    : nodes_(std::move(nodes)), f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {
  const std::size_t n = nodes_.size();
  if (n == 0) throw TooFewNodes("curve jets need at least one node");
  if (f_.size() != n || g_.size() != n || h_.size() != n)
    throw LengthMismatch("one jet per node required for each component");
  for (std::size_t i = 1; i < n; ++i)
    if (!(nodes_[i - 1] < nodes_[i])) throw DuplicateNodes("jet nodes must be strictly increasing");
  const std::size_t len = f_[0].size();
  if (len == 0) throw LengthMismatch("jets must hold at least the value");
  for (std::size_t i = 0; i < n; ++i)
    if (f_[i].size() != len || g_[i].size() != len || h_[i].size() != len)
      throw LengthMismatch("all jets must share the same length m+1");
  order_ = static_cast<int>(len) - 1;
}

std::size_t CurveJets::index_of(double t) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.end() || *it != t) throw NodeNotFound("node not present in jet set");
  return static_cast<std::size_t>(it - nodes_.begin());
}

double CurveJets::max_magnitude() const {
  double big = 0.0;
  for (const auto* comp : {&f_, &g_, &h_})
    for (const auto& jet : *comp)
      for (double v : jet) big = std::max(big, std::abs(v));
  return big;
}

CurveJets left_translate(const HPoint& p, const CurveJets& jets) {
  const std::size_t n = jets.size();
  std::vector<std::vector<double>> f(n), g(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i].assign(jets.f(i).begin(), jets.f(i).end());
    g[i].assign(jets.g(i).begin(), jets.g(i).end());
    h[i].assign(jets.h(i).begin(), jets.h(i).end());
    for (std::size_t k = 0; k < h[i].size(); ++k) h[i][k] += 2.0 * (p.y * f[i][k] - p.x * g[i][k]);
    f[i][0] += p.x;
    g[i][0] += p.y;
    h[i][0] += p.z;
  }
  return CurveJets(jets.nodes(), std::move(f), std::move(g), std::move(h));
}

double horizontality_defect(const PiecewiseCm& f, const PiecewiseCm& g, const PiecewiseCm& h,
                            std::span<const double> grid) {
  double worst = 0.0;
  for (double t : grid) {
    const double eta = 2.0 * (f.eval(t, 1) * g.eval(t) - f.eval(t) * g.eval(t, 1));
    worst = std::max(worst, std::abs(h.eval(t, 1) - eta));
  }
  return worst;
}

double horizontality_defect(const PiecewiseCm& f, const PiecewiseCm& g, const PiecewiseCm& h,
                            std::span<const double> grid, const Interval& domain) {
  for (double t : grid)
    if (t < domain.lo || t > domain.hi) throw DomainViolation("audit grid leaves the curve domain");
  return horizontality_defect(f, g, h, grid);
}

}  // namespace heiswhit
