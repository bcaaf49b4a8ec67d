#include "heiswhit/horizontal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heiswhit/errors.hpp"
#include "heiswhit/heisenberg.hpp"

namespace heiswhit {

const char* to_string(Status s) {
  switch (s) {
    case Status::consistent: return "consistent";
    case Status::inconsistent: return "inconsistent";
    case Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const Evidence* Verdict::find(const std::string& name) const {
  for (const auto& e : evidence)
    if (e.name == name) return &e;
  return nullptr;
}

Evidence assess(std::string name, Profile profile, double scale, const ThresholdPolicy& policy, bool gating) {
  Evidence e;
  e.name = std::move(name);
  e.gating = gating;
  const double vanish = policy.vanishing_factor * scale;
  e.slope = fit_loglog_slope(profile, vanish, policy.decades);
  e.terminal = profile.terminal();
  const double tol = policy.tolerance(scale);
  e.scale = scale;
  e.tol = tol;
  if (profile.empty()) {
    e.status = Status::inconclusive;
  } else if (profile.max_value() <= vanish) {
    e.status = Status::consistent;
  } else if (!std::isnan(e.slope) && e.slope >= policy.consistent_slope && e.terminal <= tol) {
    e.status = Status::consistent;
  } else if (!std::isnan(e.slope) && e.slope <= policy.inconsistent_slope &&
             e.terminal >= policy.inconsistent_multiple * tol) {
    e.status = Status::inconsistent;
  } else {
    e.status = Status::inconclusive;
  }
  e.profile = std::move(profile);
  return e;
}

Status combine(const std::vector<Evidence>& evidence) {
  bool all_consistent = true;
  bool any_gating = false;
  for (const auto& e : evidence) {
    if (!e.gating) continue;
    any_gating = true;
    if (e.status == Status::inconsistent) return Status::inconsistent;
    if (e.status != Status::consistent) all_consistent = false;
  }
  return any_gating && all_consistent ? Status::consistent : Status::inconclusive;
}

namespace {

Verdict make_verdict(std::vector<Evidence> evidence, double scale, const ThresholdPolicy& policy) {
  Verdict v;
  v.status = combine(evidence);
  v.evidence = std::move(evidence);
  v.policy = policy;
  v.scale = scale;
  v.tol = policy.tolerance(scale);
  return v;
}

void check_cm_nodes(const SampledCurve& samples, int m) {
  if (m < 1) throw OrderMismatch("m must be at least 1");
  if (samples.size() < static_cast<std::size_t>(m) + 2) throw TooFewNodes("check needs at least m+2 nodes");
}

std::vector<Evidence> dd_evidence(const SampledCurve& samples, int m, const ThresholdPolicy& policy,
                                  const ScanOptions& opts, double& max_spread) {
  const auto dd = dd_profile(samples, m, opts);
  const char* names[3] = {"dd_f", "dd_g", "dd_h"};
  std::vector<Evidence> out;
  max_spread = 0.0;
  const auto& t = samples.nodes();
  const std::size_t k = static_cast<std::size_t>(m) + 1;
  for (int c = 0; c < 3; ++c) {
    max_spread = std::max(max_spread, dd[static_cast<std::size_t>(c)].max_value());
    // spreads are measured in divided-difference units, so the reference
    // magnitude includes the largest m-th divided difference itself
    const auto& v = samples.component(c);
    double big = 0.0;
    for (std::size_t i = 0; i + k <= t.size(); ++i)
      big = std::max(big, std::abs(divided_difference(std::span(v).subspan(i, k), std::span(t).subspan(i, k))));
    const double scale = std::max(samples.scale(), 1.0 + big);
    out.push_back(assess(names[c], dd[static_cast<std::size_t>(c)], scale, policy));
  }
  return out;
}

CurveJets jets_of_extension(const SampledCurve& samples, int m) {
  const auto& t = samples.nodes();
  std::array<std::vector<std::vector<double>>, 3> jets;
  for (int c = 0; c < 3; ++c) {
    const PiecewiseCm w = extend(jets_from_samples(t, samples.component(c), m), m);
    jets[static_cast<std::size_t>(c)] = field_of(w, t, m).jets();
  }
  return CurveJets(t, std::move(jets[0]), std::move(jets[1]), std::move(jets[2]));
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

Verdict check_c1(const SampledCurve& samples, const ThresholdPolicy& policy, const ScanOptions& opts) {
  const std::size_t n = samples.size();
  const auto& t = samples.nodes();
  const auto& v = samples.values();
  const bool windowed = opts.enumeration == Enumeration::windowed || opts.window > 0;
  const std::size_t window = windowed ? effective_window(opts, 1, n, false) : n;
  const std::vector<double> deltas = scan_deltas(t, opts);
  ProfileAccumulator spread(deltas), z(deltas);
  double max_z = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const HPoint anchor = pansu_dq(v[i], v[i + 1], t[i], t[i + 1]);
    for (std::size_t j = i + 1; j < n && j < i + window; ++j) {
      const HPoint q = pansu_dq(v[i], v[j], t[i], t[j]);
      const double d = t[j] - t[i];
      spread.add(d, std::hypot(q.x - anchor.x, q.y - anchor.y));
      z.add(d, std::abs(q.z));
      max_z = std::max(max_z, std::abs(q.z));
    }
  }
  const double scale = samples.scale();
  std::vector<Evidence> ev;
  ev.push_back(assess("xy_spread", spread.cumulative(), scale, policy));
  ev.push_back(assess("z", z.cumulative(), scale, policy));
  ev.push_back(assess("z_band", z.band(), scale, policy, false));
  Verdict out = make_verdict(std::move(ev), scale, policy);
  out.constants["max_z"] = max_z;
  return out;
}

Verdict check_cm(const SampledCurve& samples, int m, const ThresholdPolicy& policy, const ScanOptions& opts) {
  check_cm_nodes(samples, m);
  double max_spread = 0.0;
  std::vector<Evidence> ev = dd_evidence(samples, m, policy, opts, max_spread);
  RatioProfile av = discrete_av_profile(samples, m, opts);
  const double max_ratio = av.max_value();
  ev.push_back(assess("discrete_av", std::move(av), samples.scale(), policy));
  Verdict out = make_verdict(std::move(ev), samples.scale(), policy);
  out.constants["max_dd_spread"] = max_spread;
  out.constants["max_av_ratio"] = max_ratio;
  return out;
}

Verdict check_cm_via_W(const SampledCurve& samples, int m, const ThresholdPolicy& policy, const ScanOptions& opts) {
  check_cm_nodes(samples, m);
  double max_spread = 0.0;
  std::vector<Evidence> ev = dd_evidence(samples, m, policy, opts, max_spread);
  RatioProfile av = av_profile(jets_of_extension(samples, m), m, opts);
  const double max_ratio = av.max_value();
  ev.push_back(assess("av_W", std::move(av), samples.scale(), policy));
  Verdict out = make_verdict(std::move(ev), samples.scale(), policy);
  out.constants["max_dd_spread"] = max_spread;
  out.constants["max_av_ratio"] = max_ratio;
  return out;
}

JetCompletion horizontal_jet_completion(const PiecewiseCm& f, const PiecewiseCm& g, std::span<const double> nodes,
                                        std::span<const double> hvals, int m) {
  if (m < 1 || f.order() < m || g.order() < m) throw OrderMismatch("extensions are not of class C^m");
  if (hvals.size() != nodes.size()) throw LengthMismatch("one height per node required");
  const WhitneyField fj = field_of(f, nodes, m);
  const WhitneyField gj = field_of(g, nodes, m);
  std::vector<std::vector<double>> jets(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto stack = leibniz_stack(fj.jet(i), gj.jet(i), m);
    jets[i].push_back(hvals[i]);
    jets[i].insert(jets[i].end(), stack.begin(), stack.end());
  }
  JetCompletion out{WhitneyField(std::vector<double>(nodes.begin(), nodes.end()), std::move(jets)), {}};
  if (nodes.size() >= 2) out.validation = validate_field(out.h);
  return out;
}

namespace {

// The bump pair b1 = (s(1-s))^{m+1}, b2 = b1 (2s-1) written in a shifted
// variable r = s - s0; `base` is s(1-s) and `odd` is 2s-1 in terms of r.
std::array<Poly, 2> bumps(int m, const Poly& base, const Poly& odd) {
  Poly p = Poly::constant(1.0);
  for (int i = 0; i <= m; ++i) p = p * base;
  return {p, p * odd};
}

// r = s - 1/2, exact binary coefficients.
std::array<Poly, 2> centred_bumps(int m) { return bumps(m, Poly{0.25, 0.0, -1.0}, Poly{0.0, 2.0}); }

Poly bracket(const Poly& p, const Poly& q) { return 2.0 * (p.derivative() * q - p * q.derivative()); }

}  // namespace

double bump_bracket(int m) {
  const auto b = centred_bumps(m);
  return integrate(bracket(b[0], b[1]), Interval(-0.5, 0.5));
}

GapPieces gap_horizontalize(std::span<const double> fa, std::span<const double> fb, std::span<const double> ga,
                            std::span<const double> gb, double ha, double hb, double a, double b, int m) {
  if (!(b > a)) throw DegenerateGap("gap requires a < b");
  const auto need = static_cast<std::size_t>(m) + 1;
  if (m < 1 || fa.size() < need || fb.size() < need || ga.size() < need || gb.size() < need)
    throw OrderMismatch("gap jets shorter than m+1");
  const double d = b - a;
  const double third = d / 3.0;
  const Poly s = transition_poly(m).compose_affine(1.0 / d, 0.0);
  auto blend = [&](std::span<const double> ja, std::span<const double> jb) {
    const Poly ta = taylor_from_jet(ja, m);
    const Poly tb = taylor_from_jet(jb, m).compose_affine(1.0, -d);
    return ta + s * (tb - ta);
  };
  const Poly bf = blend(fa, fb);
  const Poly bg = blend(ga, gb);

  // Outer thirds are stored around their midpoints. The middle third is split
  // in two halves anchored at the outer ends, so the bump's low-order
  // coefficients are exact zeros where it meets the unbumped pieces.
  struct Sub {
    double lo, hi, origin;
    Poly f, g;
  };
  const double half = 0.5 * third;
  std::array<Sub, 4> sub{{{a, a + third, a + half, {}, {}},
                          {a + third, a + 1.5 * third, a + third, {}, {}},
                          {a + 1.5 * third, a + 2.0 * third, a + 2.0 * third, {}, {}},
                          {a + 2.0 * third, b, a + 2.5 * third, {}, {}}}};
  auto local = [&](const Sub& p) { return Interval(p.lo - p.origin, p.hi - p.origin); };
  double blend_area = 0.0, blend_abs = 0.0;
  for (auto& p : sub) {
    p.f = bf.compose_affine(1.0, p.origin - a);
    p.g = bg.compose_affine(1.0, p.origin - a);
    const Poly eta = bracket(p.f, p.g);
    blend_area += integrate(eta, local(p));
    blend_abs += abs_integral(eta, local(p));
  }
  const double D = hb - ha - blend_area;
  // s = v / third on the left half and s = 1 + v / third on the right half
  std::array<std::array<Poly, 2>, 2> bump{bumps(m, Poly{0.0, 1.0, -1.0}, Poly{-1.0, 2.0}),
                                          bumps(m, Poly{0.0, -1.0, -1.0}, Poly{1.0, 2.0})};
  for (auto& pair : bump)
    for (auto& q : pair) q = q.compose_affine(1.0 / third, 0.0);
  // the bracket integral of the bump pair does not depend on the gap length
  const double c = bump_bracket(m);

  GapPieces out;
  out.deficit = D;
  const double noise = 1e-12 * (std::abs(ha) + std::abs(hb) + blend_abs);
  if (std::abs(D) > noise) {
    out.sigma = static_cast<int>(sign_of(D) * sign_of(c));
    // Cross terms between the blend and the bump are linear in lambda. The
    // rotated pair u = cos b1 - sin b2, v = sigma (sin b1 + cos b2) keeps the
    // bracket of (b1, b2) and the angle is picked to cancel them.
    double w[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t h = 0; h < 2; ++h) {
      const Sub& p = sub[h + 1];
      const Interval iv = local(p);
      w[0] += integrate(bracket(bump[h][0], p.g), iv);
      w[1] += integrate(bracket(bump[h][1], p.g), iv);
      w[2] += out.sigma * integrate(bracket(p.f, bump[h][0]), iv);
      w[3] += out.sigma * integrate(bracket(p.f, bump[h][1]), iv);
    }
    const double lin_cos = w[0] + w[3], lin_sin = w[2] - w[1];
    if (lin_cos != 0.0 || lin_sin != 0.0) out.angle = std::atan2(-lin_cos, lin_sin);
    out.lambda = std::sqrt(std::abs(D) / std::abs(c));
    const double cs = std::cos(out.angle), sn = std::sin(out.angle);
    for (std::size_t h = 0; h < 2; ++h) {
      sub[h + 1].f += out.lambda * (cs * bump[h][0] - sn * bump[h][1]);
      sub[h + 1].g += (out.lambda * out.sigma) * (sn * bump[h][0] + cs * bump[h][1]);
    }
  }

  double start = ha;
  for (std::size_t k = 0; k < 4; ++k) {
    const Sub& p = sub[k];
    const Poly anti = bracket(p.f, p.g).antiderivative();
    const Poly ph = Poly::constant(start - anti(p.lo - p.origin)) + anti;
    out.starts[k] = p.lo;
    out.f[k] = {p.origin, p.f};
    out.g[k] = {p.origin, p.g};
    out.h[k] = {p.origin, ph};
    start = ph(p.hi - p.origin);
  }
  return out;
}

HorizontalCurve synthesize(const SampledCurve& samples, int m, const SynthesisOptions& sopts,
                           const ScanOptions& opts) {
  if (m < 1) throw OrderMismatch("m must be at least 1");
  const std::size_t n = samples.size();
  if (n < static_cast<std::size_t>(m) + 1) throw TooFewNodes("synthesis needs at least m+1 nodes");
  const auto& t = samples.nodes();
  const auto& hv = samples.component(2);

  const WhitneyField jf = jets_from_samples(t, samples.component(0), m);
  const WhitneyField jg = jets_from_samples(t, samples.component(1), m);
  HorizontalCurve out;
  out.order = m;
  out.nodes = t;
  out.completion = horizontal_jet_completion(extend(jf, m), extend(jg, m), t, hv, m);

  std::vector<double> breaks;
  std::vector<PolyPiece> pf, pg, ph;
  auto taylor_end = [&](std::size_t i) {
    const Poly tf = taylor_from_jet(jf.jet(i), m);
    const Poly tg = taylor_from_jet(jg.jet(i), m);
    pf.push_back({t[i], tf});
    pg.push_back({t[i], tg});
    ph.push_back({t[i], Poly::constant(hv[i]) + bracket(tf, tg).antiderivative()});
  };
  taylor_end(0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const GapPieces gp =
        gap_horizontalize(jf.jet(i), jf.jet(i + 1), jg.jet(i), jg.jet(i + 1), hv[i], hv[i + 1], t[i], t[i + 1], m);
    out.lambdas.push_back(gp.lambda);
    for (std::size_t k = 0; k < gp.starts.size(); ++k) {
      breaks.push_back(gp.starts[k]);
      pf.push_back(gp.f[k]);
      pg.push_back(gp.g[k]);
      ph.push_back(gp.h[k]);
    }
  }
  breaks.push_back(t.back());
  taylor_end(n - 1);
  out.f = PiecewiseCm(breaks, std::move(pf), m);
  out.g = PiecewiseCm(breaks, std::move(pg), m);
  out.h = PiecewiseCm(breaks, std::move(ph), m);

  const std::size_t npts = std::max<std::size_t>(sopts.audit_points, 2);
  std::vector<double> grid(npts);
  for (std::size_t i = 0; i < npts; ++i)
    grid[i] = t.front() + (t.back() - t.front()) * static_cast<double>(i) / static_cast<double>(npts - 1);
  grid.back() = t.back();
  out.defect = horizontality_defect(out.f, out.g, out.h, grid);
  const double scale = samples.scale();
  if (out.defect > sopts.defect_factor * scale)
    throw SynthesisDefect("synthesized curve fails the horizontality audit");

  for (std::size_t i = 0; i < n; ++i) {
    const HPoint& p = samples.values()[i];
    out.node_error = std::max({out.node_error, std::abs(out.f(t[i]) - p.x) / (1.0 + std::abs(p.x)),
                               std::abs(out.g(t[i]) - p.y) / (1.0 + std::abs(p.y)),
                               std::abs(out.h(t[i]) - p.z) / (1.0 + std::abs(p.z))});
  }
  out.max_jump = std::max({out.f.max_relative_jump(m), out.g.max_relative_jump(m), out.h.max_relative_jump(m)});

  ProfileAccumulator mod(scan_deltas(breaks, opts));
  std::vector<double> fm(breaks.size()), gm(breaks.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    fm[i] = out.f.eval(breaks[i], m);
    gm[i] = out.g.eval(breaks[i], m);
  }
  for (std::size_t i = 0; i < breaks.size(); ++i)
    for (std::size_t j = i + 1; j < breaks.size(); ++j)
      mod.add(breaks[j] - breaks[i], std::max(std::abs(fm[j] - fm[i]), std::abs(gm[j] - gm[i])));
  out.modulus = mod.cumulative();
  return out;
}

FinitenessReport finiteness_check(const SampledCurve& samples, int m, const ModulusFn& omega,
                                  const ScanOptions& opts) {
  if (m < 1) throw OrderMismatch("m must be at least 1");
  const std::size_t n = samples.size();
  const std::size_t k = static_cast<std::size_t>(m) + 2;
  if (n < k) throw TooFewNodes("finiteness check needs at least m+2 nodes");
  FinitenessReport out;
  if (opts.window > 0 && static_cast<std::size_t>(opts.window) < k)
    throw ConfigError("window must hold at least m+2 nodes");
  out.full = opts.enumeration == Enumeration::full || (opts.enumeration == Enumeration::automatic && n <= 20);
  const std::size_t window = effective_window(opts, m, n, out.full);
  const auto& t = samples.nodes();
  ProfileAccumulator acc(scan_deltas(t, opts));

  std::vector<double> xs(k);
  std::array<std::vector<double>, 3> ys;
  for (auto& y : ys) y.resize(k);
  for_each_window_subset(n, k, window, [&](std::span<const std::size_t> x) {
    ++out.subsets;
    for (std::size_t i = 0; i < k; ++i) {
      xs[i] = t[x[i]];
      for (int c = 0; c < 3; ++c) ys[static_cast<std::size_t>(c)][i] = samples.component(c)[x[i]];
    }
    const double origin = xs.front();
    const double diam = xs.back() - xs.front();
    std::array<std::vector<std::vector<double>>, 3> jets;
    double seminorm = 0.0;
    for (int c = 0; c < 3; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      const Poly p = newton_interp(xs, ys[cu], origin);
      seminorm = std::max(seminorm, std::abs(p.derivative_at(0.0, m + 1)) * omega.rate_bound(diam));
      jets[cu].resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (int j = 0; j <= m; ++j) jets[cu][i].push_back(p.derivative_at(xs[i] - origin, j));
        jets[cu][i][0] = ys[cu][i];
      }
    }
    if (seminorm > out.C2_hat || out.worst_C2_subset.empty()) {
      out.C2_hat = std::max(out.C2_hat, seminorm);
      if (seminorm >= out.C2_hat) out.worst_C2_subset.assign(x.begin(), x.end());
    }
    const CurveJets gamma(xs, std::move(jets[0]), std::move(jets[1]), std::move(jets[2]));
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const AVPair av = av_pair_at(gamma, i, j, m);
        const double w = omega(xs[j] - xs[i]);
        const double r = w > 0.0 ? std::abs(av.A) / (av.V * w) : std::numeric_limits<double>::infinity();
        worst = std::max(worst, r);
      }
    acc.add(diam, worst);
    if (worst > out.M_hat || out.worst_M_subset.empty()) {
      out.M_hat = std::max(out.M_hat, worst);
      if (worst >= out.M_hat) out.worst_M_subset.assign(x.begin(), x.end());
    }
  });
  out.ratio = acc.cumulative();
  return out;
}

}  // namespace heiswhit
