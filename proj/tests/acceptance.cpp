// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "heiswhit/av.hpp"
#include "heiswhit/horizontal.hpp"
#include "heiswhit/whitney.hpp"
#include "oracles.hpp"

using namespace heiswhit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct PolyCurve {
  std::vector<double> f, g, h;
};

CurveJets jets_of(const PolyCurve& c, const std::vector<double>& t, int m) {
  std::vector<std::vector<double>> F(t.size()), G(t.size()), H(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int k = 0; k <= m; ++k) {
      F[i].push_back(oracle::eval_d(oracle::deriv(c.f, k), t[i]));
      G[i].push_back(oracle::eval_d(oracle::deriv(c.g, k), t[i]));
      H[i].push_back(oracle::eval_d(oracle::deriv(c.h, k), t[i]));
    }
  return CurveJets(t, F, G, H);
}

SampledCurve samples_of(const PolyCurve& c, const std::vector<double>& t) {
  std::vector<HPoint> v;
  for (double s : t) v.push_back({oracle::eval_d(c.f, s), oracle::eval_d(c.g, s), oracle::eval_d(c.h, s)});
  return SampledCurve(t, v);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

// 1: group algebra on random triples
Outcome group_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-2, 2), ur(0.1, 10);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const HPoint p{u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng)}, s{u(rng), u(rng), u(rng)};
    const double r = ur(rng) * (i % 2 ? 1 : -1);
    const auto err = [](const HPoint& a, const HPoint& b, double scale) {
      return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)}) / scale;
    };
    worst = std::max(worst, err((p * q) * s, p * (q * s), 1.0 + std::abs((p * q * s).z)));
    worst = std::max(worst, err(p * inverse(p), HPoint{}, 1.0 + std::abs(p.z)));
    worst = std::max(worst, err(inverse(p) * p, HPoint{}, 1.0 + std::abs(p.z)));
    worst = std::max(worst, err(dilate(r, p * q), dilate(r, p) * dilate(r, q), r * r * (1.0 + std::abs((p * q).z))));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 1.0, fmt("max relative error %.2e, ", worst) + fmt("%.3f s", secs)};
}

// 2: left invariance of A, V, A[X], V[X]
Outcome left_invariance() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 3;
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(m + 3));
    const PolyCurve c{oracle::random_poly(rng, deg), oracle::random_poly(rng, deg), oracle::random_poly(rng, deg)};
    const auto t = oracle::random_sorted_nodes(rng, static_cast<std::size_t>(m) + 3, 0.0, 1.0, 0.02);
    const HPoint p{u(rng), u(rng), u(rng)};
    const CurveJets j = jets_of(c, t, m), pj = left_translate(p, j);
    const SampledCurve s = samples_of(c, t), ps = left_translate(p, s);
    for (std::size_t a = 0; a + 1 < t.size(); ++a) {
      const std::size_t b = t.size() - 1;
      const AVPair x = av_pair_at(j, a, b, m), y = av_pair_at(pj, a, b, m);
      worst = std::max({worst, rel(x.A, y.A), std::abs(x.V - y.V) / x.V});
    }
    std::vector<std::size_t> X;
    for (int i = 0; i <= m; ++i) X.push_back(static_cast<std::size_t>(i + 1));
    const AVPair dx = discrete_av_pair(s, X, X.front(), X.back(), m), dy = discrete_av_pair(ps, X, X.front(), X.back(), m);
    worst = std::max({worst, rel(dx.A, dy.A), std::abs(dx.V - dy.V) / dx.V});
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-10 && secs < 10.0, fmt("max relative change %.2e, ", worst) + fmt("%.3f s", secs)};
}

// 3: swap antisymmetry with exact jets
Outcome swap_antisymmetry() {
  std::mt19937_64 rng(1003);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 3;
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(m + 1));
    const PolyCurve c{oracle::random_poly(rng, deg), oracle::random_poly(rng, deg), oracle::random_poly(rng, deg)};
    const auto t = oracle::random_sorted_nodes(rng, 2, -1.0, 1.0, 0.01);
    const CurveJets j = jets_of(c, t, m);
    const double ab = area_discrepancy(j, 0, 1, m), ba = area_discrepancy(j, 1, 0, m);
    worst = std::max(worst, std::abs(ab + ba) / std::max(1.0, std::abs(ab)));
  }
  return {worst <= 1e-10, fmt("max |A(b,a) + A(a,b)| %.2e", worst)};
}

// 4: recursive vs Hermite-Genocchi divided differences; Newton reproduction
Outcome divided_differences() {
  std::mt19937_64 rng(1004);
  double worst_dd = 0.0, worst_newton = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    const int deg = static_cast<int>(rng() % static_cast<unsigned>(m + 4));
    const auto c = oracle::random_poly(rng, deg);
    const auto dm = oracle::deriv(c, m);
    const auto t = oracle::random_sorted_nodes(rng, static_cast<std::size_t>(m) + 1, -1.0, 1.0, 0.02);
    std::vector<double> v;
    for (double x : t) v.push_back(oracle::eval_d(c, x));
    const double rec = divided_difference(v, t);
    const double hg = hermite_genocchi([&](double x) { return oracle::horner(dm, x); }, t);
    worst_dd = std::max(worst_dd, std::abs(rec - hg) / (1.0 + std::abs(rec)));
    const Poly p = newton_interp(t, v, t.front());
    for (std::size_t i = 0; i < t.size(); ++i)
      worst_newton = std::max(worst_newton, std::abs(p(t[i] - t.front()) - v[i]) / (1.0 + std::abs(v[i])));
  }
  return {worst_dd <= 1e-9 && worst_newton <= 1e-10,
          fmt("recursive vs quadrature %.2e, Newton reproduction %.2e", worst_dd, worst_newton)};
}

// 5: interpolation error bounds for x^{m+1} on [0, 1]
Outcome interpolation_bounds() {
  std::mt19937_64 rng(1005);
  double worst0 = 0.0, worst1 = 0.0;  // largest error / bound
  for (int m = 1; m <= 3; ++m) {
    const double M = oracle::factorial(m + 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto X = oracle::random_sorted_nodes(rng, static_cast<std::size_t>(m) + 1, 0.0, 1.0, 1e-4);
      std::vector<double> v;
      for (double x : X) v.push_back(std::pow(x, m + 1));
      const double diam = X.back() - X.front();
      const Poly P = newton_interp(X, v, X.front());
      const double b0 = M * (2 * m + 1) * diam * std::pow(diam, m);
      const double b1 = M * (2 * m + 1) * (m + 3) * diam * std::pow(diam, m - 1);
      for (int i = 0; i <= 64; ++i) {
        const double x = X.front() + diam * i / 64;
        const double e0 = std::abs(std::pow(x, m + 1) - P(x - X.front()));
        const double e1 = std::abs((m + 1) * std::pow(x, m) - P.derivative_at(x - X.front(), 1));
        worst0 = std::max(worst0, e0 / b0);
        worst1 = std::max(worst1, e1 / b1);
      }
    }
  }
  return {worst0 <= 1.0 && worst1 <= 1.0, fmt("largest error/bound: value %.3f, derivative %.3f", worst0, worst1)};
}

// 6: decay of the continuous/discrete A/V gap on the circle
Outcome equivalence_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  double extra = 0.0;
  for (int m = 1; m <= 3; ++m) {
    double prev_f = 0.0, prev_r = 0.0, prev_h = 0.0;
    double min_slope = 1e300;
    for (int n : {16, 32, 64, 128}) {
      const SampledCurve s = fixture::circle_samples(n);
      const EquivalenceReport r = av_equivalence(fixture::circle_jets(s.nodes(), m), s, m);
      const double h = 1.0 / (n - 1);
      if (prev_h > 0.0) {
        const double lh = std::log(prev_h / h);
        const double slope = std::min(std::log(prev_f / r.forward_max) / lh, std::log(prev_r / r.reverse_max) / lh);
        // 128 nodes only shows where the slope is heading
        if (n == 128)
          extra = slope;
        else
          min_slope = std::min(min_slope, slope);
      }
      prev_f = r.forward_max;
      prev_r = r.reverse_max;
      prev_h = h;
    }
    out.pass = out.pass && min_slope >= 0.9;
    out.detail += "m=" + std::to_string(m) + fmt(" min slope %.3f", min_slope) + fmt(" (64->128: %.3f); ", extra);
  }
  const double secs = seconds_since(t0);
  out.pass = out.pass && secs < 30.0;
  out.detail += fmt("%.2f s", secs);
  return out;
}

// 7: verdicts on positive and negative controls
Outcome controls() {
  Outcome out;
  int checks = 0, failed = 0;
  auto expect = [&](const Verdict& v, Status want, const std::string& what) {
    ++checks;
    if (v.status != want) {
      ++failed;
      out.detail += what + "=" + to_string(v.status) + "; ";
    }
  };
  const std::vector<std::pair<std::string, std::function<HPoint(double)>>> positives{
      {"circle", fixture::circle}, {"cubic", fixture::cubic}, {"quintic", fixture::quintic}};
  double worst_slope_err = 0.0;
  for (int n : {32, 64}) {
    for (const auto& [name, gamma] : positives) {
      const SampledCurve s = fixture::sample(n, gamma);
      const std::string tag = name + "/" + std::to_string(n);
      expect(check_c1(s), Status::consistent, tag + "/c1");
      for (int m = 1; m <= 3; ++m) {
        expect(check_cm(s, m), Status::consistent, tag + "/cm" + std::to_string(m));
        expect(check_cm_via_W(s, m), Status::consistent, tag + "/W" + std::to_string(m));
      }
    }
    const SampledCurve bad = fixture::ttt_samples(n);
    const std::string tag = "drift/" + std::to_string(n);
    const Verdict c1 = check_c1(bad);
    expect(c1, Status::inconsistent, tag + "/c1");
    const Evidence* zb = c1.find("z_band");
    worst_slope_err = std::max(worst_slope_err, zb ? std::abs(zb->slope + 1.0) : 1e300);
    for (int m = 1; m <= 3; ++m) {
      expect(check_cm(bad, m), Status::inconsistent, tag + "/cm" + std::to_string(m));
      expect(check_cm_via_W(bad, m), Status::inconsistent, tag + "/W" + std::to_string(m));
    }
  }
  out.pass = failed == 0 && worst_slope_err <= 0.15;
  out.detail += std::to_string(checks - failed) + "/" + std::to_string(checks) + " verdicts as expected, " +
                fmt("z profile slope within %.3f of -1", worst_slope_err);
  return out;
}

// 8: synthesis quality and bump scaling
Outcome synthesis() {
  double node = 0.0, defect = 0.0, jump = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int n : {16, 32}) {
      for (const SampledCurve& s : {fixture::circle_samples(n), fixture::sample(n, fixture::cubic),
                                    fixture::sample(n, fixture::quintic)}) {
        const HorizontalCurve c = synthesize(s, m, {10000, 1e-9});
        node = std::max(node, c.node_error);
        defect = std::max(defect, c.defect);
        jump = std::max(jump, c.max_jump);
      }
    }
  std::vector<double> scaled;
  for (double c : {1e-2, 1e-4, 1e-6})
    scaled.push_back(synthesize(SampledCurve({0.0, 1.0}, {{0, 0, 0}, {0, 0, c}}), 1).lambdas[0] / std::sqrt(c));
  const double spread = *std::max_element(scaled.begin(), scaled.end()) / *std::min_element(scaled.begin(), scaled.end());
  const bool ok = node <= 1e-10 && defect <= 1e-9 && jump <= 1e-9 && spread <= 1.5;
  char buf[200];
  std::snprintf(buf, sizeof buf, "node %.1e, defect %.1e, jump %.1e, lambda/sqrt(c) spread %.6f", node, defect, jump,
                spread);
  return {ok, buf};
}

// 9: the Whitney extension operator
Outcome extension() {
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> u(-1, 1);
  double lin = 0.0, node = 0.0, self = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 3;
    const auto t = oracle::random_sorted_nodes(rng, 8, 0.0, 1.0, 0.02);
    auto field = [&] {
      std::vector<std::vector<double>> j(t.size());
      for (auto& x : j)
        for (int k = 0; k <= m; ++k) x.push_back(u(rng));
      return WhitneyField(t, j);
    };
    const WhitneyField a = field(), b = field();
    const double alpha = 2 * u(rng), beta = 2 * u(rng);
    const PiecewiseCm ea = extend(a, m), eb = extend(b, m), ec = extend(a.combine(alpha, b, beta), m);
    for (int i = 0; i <= 200; ++i) {
      const double x = -0.1 + 1.2 * i / 200;
      for (int k = 0; k <= m; ++k)
        lin = std::max(lin, std::abs(ec.eval(x, k) - alpha * ea.eval(x, k) - beta * eb.eval(x, k)) /
                                (1 + std::abs(ec.eval(x, k))));
    }
    const WhitneyField back = field_of(ea, t, m);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int k = 0; k <= m; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        node = std::max(node, std::abs(back.jet(i)[ku] - a.jet(i)[ku]) / (1 + std::abs(a.jet(i)[ku])));
      }
    const FieldValidation v1 = validate_field(a), v2 = validate_field(back);
    for (std::size_t k = 0; k < v1.max_remainder.size(); ++k)
      self = std::max(self, std::abs(v1.max_remainder[k] - v2.max_remainder[k]) / (1 + v1.max_remainder[k]));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "linearity %.1e, node jets %.1e, validation agreement %.1e", lin, node, self);
  return {lin <= 1e-10 && node <= 1e-9 && self <= 1e-8, buf};
}

// 10: finiteness constants under refinement
Outcome finiteness() {
  const auto t0 = std::chrono::steady_clock::now();
  const ModulusFn lip = ModulusFn::power(1.0, 1.0);
  ScanOptions windowed;
  windowed.enumeration = Enumeration::windowed;
  const auto within2 = [](double a, double b) { return a > 0 && b > 0 && std::max(a / b, b / a) <= 2.0; };
  Outcome out;
  for (int m = 1; m <= 2; ++m) {
    const auto c8 = finiteness_check(fixture::circle_samples(8), m, lip);
    const auto c16 = finiteness_check(fixture::circle_samples(16), m, lip);
    const auto b8 = finiteness_check(fixture::ttt_samples(8), m, lip);
    const auto b16 = finiteness_check(fixture::ttt_samples(16), m, lip);
    bool agree = true;
    double worst = 1.0;
    for (int n : {8, 12, 16})
      for (const SampledCurve& s : {fixture::circle_samples(n), fixture::ttt_samples(n)}) {
        const auto full = finiteness_check(s, m, lip), win = finiteness_check(s, m, lip, windowed);
        worst = std::max(worst, std::max(full.M_hat / win.M_hat, win.M_hat / full.M_hat));
        agree = agree && full.full && !win.full && within2(full.M_hat, win.M_hat) && within2(full.C2_hat, win.C2_hat);
      }
    out.pass = out.pass && within2(c8.M_hat, c16.M_hat) && within2(c8.C2_hat, c16.C2_hat) &&
               b16.M_hat >= 4.0 * b8.M_hat && agree;
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "m=%d circle M %.4g->%.4g C2 %.4g->%.4g, drift M x%.2f, full/windowed M ratio up to %.3g; ", m,
                  c8.M_hat, c16.M_hat, c8.C2_hat, c16.C2_hat, b16.M_hat / b8.M_hat, worst);
    out.detail += buf;
  }
  const double secs = seconds_since(t0);
  out.pass = out.pass && secs < 60.0;
  out.detail += fmt("%.2f s", secs);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"group algebra", group_algebra},
      {"left invariance of A, V, A[X], V[X]", left_invariance},
      {"swap antisymmetry", swap_antisymmetry},
      {"divided-difference oracles", divided_differences},
      {"interpolation error bounds", interpolation_bounds},
      {"A/V equivalence decay", equivalence_decay},
      {"positive and negative controls", controls},
      {"horizontal synthesis", synthesis},
      {"extension operator", extension},
      {"finiteness constants", finiteness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
