#include "heiswhit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "heiswhit/errors.hpp"
#include "heiswhit/horizontal.hpp"

namespace heiswhit::cli {

using nlohmann::json;

namespace {

struct ModeName {
  Mode mode;
  const char* name;
};

constexpr ModeName kModes[] = {
    {Mode::check_c1, "check-c1"},         {Mode::check_cm, "check-cm"},
    {Mode::check_cm_w, "check-cm-w"},     {Mode::synthesize, "synthesize"},
    {Mode::finiteness, "finiteness"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json profile_json(const Profile& p) {
  json arr = json::array();
  for (const auto& pt : p.points) arr.push_back({pt.delta, pt.value});
  return arr;
}

json verdict_json(const Verdict& v) {
  json ev = json::array();
  for (const auto& e : v.evidence)
    ev.push_back({{"name", e.name},
                  {"gating", e.gating},
                  {"slope", e.slope},
                  {"terminal", e.terminal},
                  {"scale", e.scale},
                  {"tol", e.tol},
                  {"status", to_string(e.status)},
                  {"profile", profile_json(e.profile)}});
  json policy = {{"tol_factor", v.policy.tol_factor},
                 {"consistent_slope", v.policy.consistent_slope},
                 {"inconsistent_slope", v.policy.inconsistent_slope},
                 {"inconsistent_multiple", v.policy.inconsistent_multiple},
                 {"vanishing_factor", v.policy.vanishing_factor},
                 {"decades", v.policy.decades}};
  if (v.policy.tol) policy["tol"] = *v.policy.tol;
  return {{"status", to_string(v.status)}, {"scale", v.scale}, {"tol", v.tol},
          {"policy", policy},              {"evidence", ev}, {"constants", v.constants}};
}

int exit_code(Status s) {
  switch (s) {
    case Status::consistent: return kExitConsistent;
    case Status::inconsistent: return kExitInconsistent;
    case Status::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

void collect(std::vector<NamedProfile>& plots, const Verdict& v) {
  for (const auto& e : v.evidence) plots.push_back({e.name, e.profile});
}

void write_grid(const HorizontalCurve& curve, std::size_t samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write grid file '" + path + "'");
  out << "t,x,y,z,defect\n";
  const double lo = curve.nodes.front(), hi = curve.nodes.back();
  char buf[5][32];
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double f = curve.f(t), g = curve.g(t);
    const double defect = std::abs(curve.h.eval(t, 1) - 2.0 * (curve.f.eval(t, 1) * g - f * curve.g.eval(t, 1)));
    const double vals[5] = {t, f, g, curve.h(t), defect};
    for (int c = 0; c < 5; ++c) {
      const auto r = std::to_chars(buf[c], buf[c] + sizeof(buf[c]) - 1, vals[c]);
      *r.ptr = '\0';
    }
    out << buf[0] << ',' << buf[1] << ',' << buf[2] << ',' << buf[3] << ',' << buf[4] << '\n';
  }
  if (!out) throw IoError("failed writing grid file '" + path + "'");
}

class PhaseClock {
 public:
  void start() { t0_ = std::chrono::steady_clock::now(); }
  void stop(const std::string& phase) {
    times_[phase] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }
  json to_json() const { return times_; }

 private:
  std::chrono::steady_clock::time_point t0_;
  std::map<std::string, double> times_;
};

}  // namespace

Mode parse_mode(std::string_view name) {
  for (const auto& m : kModes)
    if (name == m.name) return m.mode;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

const char* to_string(Mode mode) {
  for (const auto& m : kModes)
    if (m.mode == mode) return m.name;
  return "?";
}

ParsedInput parse_csv(std::string_view text) {
  std::vector<double> t;
  std::vector<HPoint> v;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
      if (line != "t,x,y,z") throw ParseError("expected header 't,x,y,z'");
      header = true;
      continue;
    }
    double f[4];
    for (int c = 0; c < 4; ++c) {
      const std::size_t comma = line.find(',');
      if ((c < 3) == (comma == std::string_view::npos))
        throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields");
      f[c] = parse_number(line.substr(0, comma), line_no);
      line.remove_prefix(comma == std::string_view::npos ? line.size() : comma + 1);
    }
    t.push_back(f[0]);
    v.push_back({f[1], f[2], f[3]});
  }
  if (!header) throw ParseError("empty input");
  return {SampledCurve::from_unsorted(std::move(t), std::move(v)), std::nullopt};
}

ParsedInput parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array())
    throw ParseError("JSON input needs a \"samples\" array");
  std::vector<double> t;
  std::vector<HPoint> v;
  std::size_t row = 0;
  for (const auto& s : doc["samples"]) {
    auto num = [&](const char* key) {
      if (!s.is_object() || !s.contains(key) || !s[key].is_number())
        throw ParseError("sample " + std::to_string(row) + ": missing numeric \"" + key + "\"");
      return s[key].get<double>();
    };
    t.push_back(num("t"));
    v.push_back({num("x"), num("y"), num("z")});
    ++row;
  }
  std::optional<int> m;
  if (doc.contains("m")) {
    if (!doc["m"].is_number_integer()) throw ParseError("\"m\" must be an integer");
    m = doc["m"].get<int>();
  }
  return {SampledCurve::from_unsorted(std::move(t), std::move(v)), m};
}

ParsedInput read_input(const std::string& path, std::optional<InputFormat> format) {
  const std::string text = read_file(path);
  if (!format) {
    const auto first = text.find_first_not_of(" \t\r\n");
    format = first != std::string::npos && text[first] == '{' ? InputFormat::json : InputFormat::csv;
  }
  return *format == InputFormat::json ? parse_json(text) : parse_csv(text);
}

SampledCurve parse_input(const std::string& path, InputFormat format) { return read_input(path, format).curve; }

std::string write_json(const SampledCurve& curve, std::optional<int> m) {
  json samples = json::array();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const HPoint& p = curve.values()[i];
    samples.push_back({{"t", curve.nodes()[i]}, {"x", p.x}, {"y", p.y}, {"z", p.z}});
  }
  json doc = {{"samples", samples}};
  if (m) doc["m"] = *m;
  return doc.dump(2) + "\n";
}

ModulusFn parse_omega(std::string_view text) {
  if (text.substr(0, 6) != "power:") throw ConfigError("omega must be 'power:<c>:<s>'");
  text.remove_prefix(6);
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("omega must be 'power:<c>:<s>'");
  try {
    return ModulusFn::power(parse_number(text.substr(0, colon), 0), parse_number(text.substr(colon + 1), 0));
  } catch (const ParseError&) {
    throw ConfigError("omega parameters must be numbers");
  }
}

void validate(const RunConfig& config, int m) {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (config.window < 0) throw ConfigError("window must be nonnegative");
  if (config.mode == Mode::finiteness && config.window > 0 && config.window < m + 2)
    throw ConfigError("finiteness mode needs window >= m+2");
  if (config.grid_samples < 2) throw ConfigError("grid-samples must be at least 2");
  if (!(config.delta_ratio > 0.0 && config.delta_ratio < 1.0)) throw ConfigError("delta-ratio must lie in (0, 1)");
  if (config.tol && !(*config.tol > 0.0)) throw ConfigError("tol must be positive");
  parse_omega(config.omega);
  if (config.input.empty()) throw ConfigError("no input file given");
}

void emit_plot_data(const std::vector<NamedProfile>& profiles, const std::string& path) {
  std::vector<const NamedProfile*> order;
  for (const auto& p : profiles)
    if (!p.profile.empty()) order.push_back(&p);
  if (order.empty()) throw IoError("no profile data to write");
  std::stable_sort(order.begin(), order.end(),
                   [](const NamedProfile* a, const NamedProfile* b) { return a->series < b->series; });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write plot file '" + path + "'");
  out << "delta,value,series\n";
  char d[32], v[32];
  for (const NamedProfile* p : order) {
    auto pts = p->profile.points;
    std::stable_sort(pts.begin(), pts.end(), [](const ProfilePoint& a, const ProfilePoint& b) { return a.delta > b.delta; });
    for (const auto& pt : pts) {
      *std::to_chars(d, d + sizeof(d) - 1, pt.delta).ptr = '\0';
      *std::to_chars(v, v + sizeof(v) - 1, pt.value).ptr = '\0';
      out << d << ',' << v << ',' << p->series << '\n';
    }
  }
  if (!out) throw IoError("failed writing plot file '" + path + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    PhaseClock clock;
    clock.start();
    if (config.input.empty()) throw ConfigError("no input file given");
    const ParsedInput in = read_input(config.input);
    clock.stop("parse");
    const int m = config.m.value_or(in.m.value_or(1));
    validate(config, m);

    ThresholdPolicy policy;
    policy.tol = config.tol;
    ScanOptions opts;
    opts.window = config.window;
    opts.delta_ratio = config.delta_ratio;
    if (config.full_enum) opts.enumeration = Enumeration::full;

    json report = {{"mode", to_string(config.mode)},
                   {"m", m},
                   {"input", {{"path", config.input}, {"nodes", in.curve.size()}, {"scale", in.curve.scale()}}},
                   {"config",
                    {{"window", config.window},
                     {"delta_ratio", config.delta_ratio},
                     {"omega", config.omega},
                     {"full_enum", config.full_enum},
                     {"force", config.force},
                     {"grid_samples", config.grid_samples}}}};
    if (config.tol) report["config"]["tol"] = *config.tol;

    std::vector<NamedProfile> plots;
    int code = kExitConsistent;
    switch (config.mode) {
      case Mode::check_c1:
      case Mode::check_cm:
      case Mode::check_cm_w: {
        clock.start();
        const Verdict v = config.mode == Mode::check_c1 ? check_c1(in.curve, policy, opts)
                          : config.mode == Mode::check_cm ? check_cm(in.curve, m, policy, opts)
                                                          : check_cm_via_W(in.curve, m, policy, opts);
        clock.stop("check");
        report["verdict"] = verdict_json(v);
        collect(plots, v);
        code = exit_code(v.status);
        break;
      }
      case Mode::synthesize: {
        clock.start();
        const Verdict v = check_cm(in.curve, m, policy, opts);
        clock.stop("check");
        report["verdict"] = verdict_json(v);
        collect(plots, v);
        if (v.status != Status::consistent && !config.force) {
          code = exit_code(v.status);
          report["synthesis"] = nullptr;
          break;
        }
        clock.start();
        const HorizontalCurve c = synthesize(in.curve, m, {}, opts);
        clock.stop("synthesize");
        report["synthesis"] = {{"defect", c.defect},
                               {"node_error", c.node_error},
                               {"max_jump", c.max_jump},
                               {"lambdas", c.lambdas},
                               {"breakpoints", c.f.breakpoints().size()},
                               {"modulus", profile_json(c.modulus)},
                               {"h_jet_remainder_max", c.completion.validation.max_remainder}};
        plots.push_back({"modulus", c.modulus});
        if (!config.grid_out.empty()) {
          clock.start();
          write_grid(c, config.grid_samples, config.grid_out);
          clock.stop("grid");
          report["synthesis"]["grid_out"] = config.grid_out;
        }
        code = kExitConsistent;
        break;
      }
      case Mode::finiteness: {
        clock.start();
        const FinitenessReport f = finiteness_check(in.curve, m, parse_omega(config.omega), opts);
        clock.stop("finiteness");
        report["finiteness"] = {{"M_hat", f.M_hat},
                                {"C2_hat", f.C2_hat},
                                {"worst_M_subset", f.worst_M_subset},
                                {"worst_C2_subset", f.worst_C2_subset},
                                {"subsets", f.subsets},
                                {"full_enumeration", f.full},
                                {"ratio", profile_json(f.ratio)}};
        plots.push_back({"finiteness_ratio", f.ratio});
        code = std::isfinite(f.M_hat) && std::isfinite(f.C2_hat) ? kExitConsistent : kExitInconsistent;
        break;
      }
    }
    report["exit_code"] = code;
    if (!config.plot_out.empty()) emit_plot_data(plots, config.plot_out);
    report["wall_times"] = clock.to_json();

    const std::string text = report.dump(2) + "\n";
    if (config.report.empty()) {
      out << text;
    } else {
      std::ofstream f(config.report, std::ios::binary);
      if (!f || !(f << text)) throw IoError("cannot write report '" + config.report + "'");
    }
    return code;
  } catch (const Error& e) {
    err << "heiswhit: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "heiswhit: unexpected failure: " << e.what() << '\n';
    return kExitError;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horizontal Whitney extension checks for sampled curves in the Heisenberg group"};
  RunConfig config;
  std::string mode = "check-cm";
  int m = 0;
  double tol = 0.0;
  app.add_option("--mode", mode, "check-c1 | check-cm | check-cm-w | synthesize | finiteness")->envname("HEISWHIT_MODE");
  auto* m_opt = app.add_option("--m", m, "smoothness order (default: input's m, else 1)")->envname("HEISWHIT_M");
  auto* tol_opt = app.add_option("--tol", tol, "absolute verdict tolerance")->envname("HEISWHIT_TOL");
  app.add_option("--window", config.window, "consecutive-node window (0 = 2m+4)")->envname("HEISWHIT_WINDOW");
  app.add_option("--delta-ratio", config.delta_ratio, "ratio of the geometric delta grid")
      ->envname("HEISWHIT_DELTA_RATIO");
  app.add_option("--omega", config.omega, "modulus of continuity, power:<c>:<s>")->envname("HEISWHIT_OMEGA");
  app.add_option("--input", config.input, "CSV or JSON samples")->envname("HEISWHIT_INPUT");
  app.add_option("--report", config.report, "JSON report path (default stdout)")->envname("HEISWHIT_REPORT");
  app.add_option("--grid-out", config.grid_out, "synthesized curve grid CSV")->envname("HEISWHIT_GRID_OUT");
  app.add_option("--grid-samples", config.grid_samples, "rows in the grid CSV")->envname("HEISWHIT_GRID_SAMPLES");
  app.add_option("--plot-out", config.plot_out, "profile CSV for plotting")->envname("HEISWHIT_PLOT_OUT");
  app.add_flag("--full-enum", config.full_enum, "scan every subset instead of windows")
      ->envname("HEISWHIT_FULL_ENUM");
  app.add_flag("--force", config.force, "synthesize even without a consistent verdict")->envname("HEISWHIT_FORCE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitConsistent;
  } catch (const CLI::ParseError& e) {
    err << "heiswhit: " << e.what() << '\n';
    return kExitError;
  }
  try {
    config.mode = parse_mode(mode);
  } catch (const Error& e) {
    err << "heiswhit: " << e.what() << '\n';
    return kExitError;
  }
  if (m_opt->count() > 0 || std::getenv("HEISWHIT_M")) config.m = m;
  if (tol_opt->count() > 0 || std::getenv("HEISWHIT_TOL")) config.tol = tol;
  return run(config, out, err);
}

}  // namespace heiswhit::cli
