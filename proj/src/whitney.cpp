#include "heiswhit/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heiswhit/divdiff.hpp"
#include "heiswhit/errors.hpp"

namespace heiswhit {

WhitneyField::WhitneyField(std::vector<double> nodes, std::vector<std::vector<double>> jets)
    : nodes_(std::move(nodes)), jets_(std::move(jets)) {
  if (nodes_.size() != jets_.size()) throw LengthMismatch("one jet per node required");
  if (nodes_.empty()) throw TooFewNodes("a Whitney field needs at least one node");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i - 1] < nodes_[i])) throw DuplicateNodes("field nodes must be strictly increasing");
  const std::size_t len = jets_.front().size();
  if (len == 0) throw LengthMismatch("jets must hold at least F^0");
  for (const auto& j : jets_)
    if (j.size() != len) throw LengthMismatch("jet length must be uniform");
  order_ = static_cast<int>(len) - 1;
}

WhitneyField WhitneyField::combine(double alpha, const WhitneyField& other, double beta) const {
  if (other.nodes_ != nodes_ || other.order_ != order_) throw LengthMismatch("fields live on different nodes");
  auto jets = jets_;
  for (std::size_t i = 0; i < jets.size(); ++i)
    for (std::size_t k = 0; k < jets[i].size(); ++k) jets[i][k] = alpha * jets[i][k] + beta * other.jets_[i][k];
  return WhitneyField(nodes_, std::move(jets));
}

ModulusFn ModulusFn::power(double c, double s) {
  if (!(c > 0.0) || !(s > 0.0 && s <= 1.0)) throw ConfigError("power modulus needs c > 0 and 0 < s <= 1");
  ModulusFn w;
  w.c_ = c;
  w.s_ = s;
  return w;
}

ModulusFn ModulusFn::tabulated(std::vector<double> t, std::vector<double> values) {
  if (t.empty() || t.size() != values.size()) throw ConfigError("tabulated modulus needs matching knots");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || (i > 0 && !(t[i] > t[i - 1]))) throw ConfigError("modulus knots must increase from t > 0");
    if (!(values[i] >= 0.0) || (i > 0 && values[i] < values[i - 1]))
      throw ConfigError("modulus values must be nonnegative and nondecreasing");
  }
  ModulusFn w;
  w.table_t_ = std::move(t);
  w.table_v_ = std::move(values);
  return w;
}

double ModulusFn::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (is_power()) return c_ * std::pow(t, s_);
  auto it = std::lower_bound(table_t_.begin(), table_t_.end(), t);
  if (it == table_t_.end()) return table_v_.back();
  const std::size_t i = static_cast<std::size_t>(it - table_t_.begin());
  const double t0 = i == 0 ? 0.0 : table_t_[i - 1];
  const double v0 = i == 0 ? 0.0 : table_v_[i - 1];
  return v0 + (table_v_[i] - v0) * (t - t0) / (table_t_[i] - t0);
}

double ModulusFn::rate_bound(double diam) const {
  if (!(diam > 0.0)) return 0.0;
  if (is_power()) return std::pow(diam, 1.0 - s_) / c_;
  // t / omega(t) is monotone on each linear segment, so knots and diam suffice
  double best = 0.0;
  auto probe = [&](double t) {
    const double w = (*this)(t);
    best = w > 0.0 ? std::max(best, t / w) : std::numeric_limits<double>::infinity();
  };
  for (double t : table_t_)
    if (t <= diam) probe(t);
  probe(diam);
  return best;
}

FieldValidation validate_field(const WhitneyField& field, const std::optional<ModulusFn>& omega,
                               const ScanOptions& opts) {
  const std::size_t n = field.size();
  if (n < 2) throw TooFewNodes("field validation needs at least two nodes");
  const int m = field.order();
  const auto& t = field.nodes();
  const std::vector<double> deltas = scan_deltas(t, opts);
  std::vector<ProfileAccumulator> acc(static_cast<std::size_t>(m) + 1, ProfileAccumulator(deltas));
  FieldValidation out;
  out.max_remainder.assign(static_cast<std::size_t>(m) + 1, 0.0);
  if (omega) out.omega_constant.assign(static_cast<std::size_t>(m) + 1, 0.0);

  for (std::size_t ia = 0; ia < n; ++ia)
    for (std::size_t ib = 0; ib < n; ++ib) {
      if (ia == ib) continue;
      const double d = t[ib] - t[ia];
      const auto ja = field.jet(ia);
      const auto jb = field.jet(ib);
      for (int k = 0; k <= m; ++k) {
        const Poly taylor = taylor_from_jet(ja.subspan(static_cast<std::size_t>(k)), m - k);
        const double r = std::abs(jb[static_cast<std::size_t>(k)] - taylor(d)) / std::pow(std::abs(d), m - k);
        const auto ku = static_cast<std::size_t>(k);
        acc[ku].add(std::abs(d), r);
        out.max_remainder[ku] = std::max(out.max_remainder[ku], r);
        if (omega) {
          const double w = (*omega)(std::abs(d));
          const double c = w > 0.0 ? r / w : (r > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
          out.omega_constant[ku] = std::max(out.omega_constant[ku], c);
        }
      }
    }
  for (auto& a : acc) out.remainder.push_back(a.cumulative());
  return out;
}

WhitneyField jets_from_samples(std::span<const double> nodes, std::span<const double> values, int m) {
  const std::size_t n = nodes.size();
  if (m < 0 || n < static_cast<std::size_t>(m) + 1) throw TooFewNodes("jet recovery needs at least m+1 nodes");
  if (values.size() != n) throw LengthMismatch("values and nodes differ in length");
  const std::size_t k = static_cast<std::size_t>(m) + 1;
  std::vector<std::vector<double>> jets(n);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = nodes[i];
    std::size_t lo = i, hi = i;
    while (hi - lo + 1 < k) {
      if (lo == 0) {
        ++hi;
      } else if (hi + 1 == n) {
        --lo;
      } else if (a - nodes[lo - 1] <= nodes[hi + 1] - a) {
        --lo;
      } else {
        ++hi;
      }
    }
    xs.assign(nodes.begin() + static_cast<std::ptrdiff_t>(lo), nodes.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    ys.assign(values.begin() + static_cast<std::ptrdiff_t>(lo), values.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    const Poly p = newton_interp(xs, ys, a);
    jets[i].resize(k);
    jets[i][0] = values[i];
    for (int j = 1; j <= m; ++j) jets[i][static_cast<std::size_t>(j)] = p.derivative_at(0.0, j);
  }
  return WhitneyField(std::vector<double>(nodes.begin(), nodes.end()), std::move(jets));
}

Poly transition_poly(int m) {
  if (m < 1) throw OrderMismatch("transition polynomial needs m >= 1");
  // s^m (1-s)^m = sum_j C(m,j) (-1)^j s^{m+j}
  std::vector<double> c(static_cast<std::size_t>(2 * m) + 1, 0.0);
  double binom = 1.0;
  for (int j = 0; j <= m; ++j) {
    c[static_cast<std::size_t>(m + j)] = (j % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (m - j) / (j + 1);
  }
  Poly anti = Poly(std::move(c)).antiderivative();
  anti *= 1.0 / anti(1.0);
  return anti;
}

PiecewiseCm extend(const WhitneyField& field, int m) {
  if (m < 0 || m > field.order()) throw OrderMismatch("extension order exceeds the field's jets");
  const auto& t = field.nodes();
  const std::size_t n = t.size();
  std::vector<PolyPiece> pieces;
  pieces.reserve(n + 1);
  pieces.push_back({t.front(), taylor_from_jet(field.jet(0), m)});
  const Poly s = m >= 1 ? transition_poly(m) : Poly{0.0, 1.0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = t[i + 1] - t[i];
    const Poly ta = taylor_from_jet(field.jet(i), m);
    const Poly tb = taylor_from_jet(field.jet(i + 1), m).compose_affine(1.0, -d);
    pieces.push_back({t[i], ta + s.compose_affine(1.0 / d, 0.0) * (tb - ta)});
  }
  pieces.push_back({t.back(), taylor_from_jet(field.jet(n - 1), m)});
  return PiecewiseCm(t, std::move(pieces), m);
}

WhitneyField field_of(const PiecewiseCm& fn, std::span<const double> nodes, int m) {
  std::vector<std::vector<double>> jets(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int k = 0; k <= m; ++k) jets[i].push_back(fn.eval(nodes[i], k));
  return WhitneyField(std::vector<double>(nodes.begin(), nodes.end()), std::move(jets));
}

}  // namespace heiswhit
