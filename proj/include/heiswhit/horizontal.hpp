#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heiswhit/av.hpp"
#include "heiswhit/divdiff.hpp"
#include "heiswhit/piecewise.hpp"
#include "heiswhit/profile.hpp"
#include "heiswhit/whitney.hpp"

namespace heiswhit {

enum class Status { consistent, inconsistent, inconclusive };
const char* to_string(Status s);

/**
 * Turns a profile into a graded verdict.
 *
 * The slope is a least-squares fit of log value against log delta over the
 * `decades` smallest decades of delta. With tol = tol_factor * scale (or the
 * absolute `tol` when set):
 *   consistent    slope >= consistent_slope and terminal <= tol
 *   inconsistent  terminal >= inconsistent_multiple * tol and slope <= inconsistent_slope
 *   inconclusive  otherwise, and for empty profiles.
 * A profile whose values never exceed vanishing_factor * scale is consistent.
 */
struct ThresholdPolicy {
  double tol_factor = 0.1;
  std::optional<double> tol;
  double consistent_slope = 0.25;
  double inconsistent_slope = 0.05;
  double inconsistent_multiple = 10.0;
  double vanishing_factor = 1e-9;
  double decades = 3.0;

  double tolerance(double scale) const { return tol ? *tol : tol_factor * scale; }
};

struct Evidence {
  std::string name;
  Profile profile;
  double slope = 0.0;  // NaN when fewer than two scales are available
  double terminal = 0.0;
  Status status = Status::inconclusive;
  double scale = 1.0;  // reference magnitude behind tol
  double tol = 0.0;
  bool gating = true;  // non-gating evidence is reported but never decides
};

struct Verdict {
  Status status = Status::inconclusive;
  std::vector<Evidence> evidence;
  ThresholdPolicy policy;
  double scale = 1.0;
  double tol = 0.0;
  std::map<std::string, double> constants;

  const Evidence* find(const std::string& name) const;
};

/// Classification of one profile under `policy` at reference magnitude `scale`.
Evidence assess(std::string name, Profile profile, double scale, const ThresholdPolicy& policy, bool gating = true);
/// Any gating inconsistent -> inconsistent; all gating consistent -> consistent.
Status combine(const std::vector<Evidence>& evidence);

/// Pansu difference quotient test. Gating profiles: "xy_spread" (distance of
/// the horizontal part of each quotient from the one on the adjacent pair at
/// a) and "z" (|vertical part|). "z_band" holds the per-band sup of the
/// vertical part and is informational. Pair scans cover all pairs unless the
/// options ask for a window.
Verdict check_c1(const SampledCurve& samples, const ThresholdPolicy& policy = {}, const ScanOptions& opts = {});

/// Divided-difference profiles of f, g, h plus the discrete A/V profile. A
/// divided-difference profile is judged at scale max(sample scale, 1 + the
/// largest m-th divided difference on consecutive nodes).
Verdict check_cm(const SampledCurve& samples, int m, const ThresholdPolicy& policy = {},
                 const ScanOptions& opts = {});

/// Divided-difference profiles plus the A/V profile of the extension W gamma
/// built from jets_from_samples.
Verdict check_cm_via_W(const SampledCurve& samples, int m, const ThresholdPolicy& policy = {},
                       const ScanOptions& opts = {});

struct JetCompletion {
  WhitneyField h;
  FieldValidation validation;
};

/// H^0 = hvals and H^k = eta^(k-1), eta = 2(f'g - g'f), from the jets of the
/// extensions f, g at the nodes.
JetCompletion horizontal_jet_completion(const PiecewiseCm& f, const PiecewiseCm& g, std::span<const double> nodes,
                                        std::span<const double> hvals, int m);

/// The constant c0 = 2 int_0^1 (b1' b2 - b1 b2') ds of the bump pair
/// b1 = (s(1-s))^{m+1}, b2 = b1 (2s-1), integrated exactly.
double bump_bracket(int m);

/// The pieces of one synthesized gap: the outer thirds and the two halves of
/// the middle third. Piece k starts at starts[k].
struct GapPieces {
  std::array<double, 4> starts{};
  std::array<PolyPiece, 4> f, g, h;
  double lambda = 0.0;
  int sigma = 1;
  double angle = 0.0;    // rotation of the bump pair that cancels cross terms
  double deficit = 0.0;  // D before correction
};

/// Blends of the endpoint Taylor polynomials plus a rotated bump pair on the
/// middle third, lambda (cos b1 - sin b2, sigma (sin b1 + cos b2)), with
/// lambda = sqrt(|D| / |c0|) so that h(a) + int 2(f'g - fg') lands exactly on
/// h(b). Throws DegenerateGap for b <= a.
GapPieces gap_horizontalize(std::span<const double> fa, std::span<const double> fb, std::span<const double> ga,
                            std::span<const double> gb, double ha, double hb, double a, double b, int m);

struct HorizontalCurve {
  PiecewiseCm f, g, h;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> lambdas;  // bump amplitude per gap
  JetCompletion completion;
  double defect = 0.0;      // max horizontality defect on the audit grid
  double node_error = 0.0;  // max relative error at the nodes
  double max_jump = 0.0;    // max relative breakpoint jump up to order m
  /// sup of |f^(m)(s) - f^(m)(t)|, |g^(m)(s) - g^(m)(t)| over breakpoints with
  /// |s - t| <= delta.
  Profile modulus;
};

struct SynthesisOptions {
  std::size_t audit_points = 10000;
  /// Defect tolerance relative to the sample scale.
  double defect_factor = 1e-9;
};

/// Horizontal C^m curve through the samples. Throws SynthesisDefect when the
/// audit defect exceeds defect_factor * scale.
HorizontalCurve synthesize(const SampledCurve& samples, int m, const SynthesisOptions& sopts = {},
                           const ScanOptions& opts = {});

struct FinitenessReport {
  double M_hat = 0.0;
  double C2_hat = 0.0;
  std::vector<std::size_t> worst_M_subset;
  std::vector<std::size_t> worst_C2_subset;
  /// sup |A/V| / omega(b - a) over subsets of diameter <= delta.
  RatioProfile ratio;
  std::size_t subsets = 0;
  bool full = false;
};

/// For every (m+2)-subset X (all of them when automatic and n <= 20, else
/// windowed), the degree m+1 interpolant Gamma_X: its C^{m,omega} seminorm on
/// the hull of X and sup over a < b in X of |A|/(V omega(b - a)).
FinitenessReport finiteness_check(const SampledCurve& samples, int m, const ModulusFn& omega,
                                  const ScanOptions& opts = {});

}  // namespace heiswhit
