#include "impred/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "impred/errors.hpp"
#include "impred/version.hpp"

namespace impred::io {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& token, double* out) {
  const char* c = token.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0' || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string bound_csv(double v, bool integer_bounds) {
  if (std::isinf(v)) return "";
  if (integer_bounds) return std::to_string(static_cast<long long>(std::llround(v)));
  return fmt_full(v);
}

nlohmann::json bound_json(double v, bool integer_bounds) {
  if (std::isinf(v)) return nullptr;
  if (integer_bounds) return static_cast<long long>(std::llround(v));
  return v;
}

nlohmann::json meta_json(const ResultMeta& meta) {
  nlohmann::json j;
  j["model"] = meta.model;
  j["target"] = meta.target;
  j["assertion"] = meta.assertion;
  j["method"] = meta.method;
  j["alpha"] = meta.alpha;
  j["draws"] = meta.draws;
  j["seed"] = meta.seed;
  j["stream"] = meta.stream;
  j["version"] = kVersion;
  return j;
}

}  // namespace

std::vector<double> ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("ingest: cannot open " + path);
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  bool seen_any = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trimmed(line);
    if (t.empty()) continue;
    double v;
    if (!parse_number(t, &v)) {
      if (!seen_any) {  // a single leading header line is allowed
        seen_any = true;
        continue;
      }
      throw domain_error("ingest: " + path + ":" + std::to_string(lineno) +
                         ": not a number: '" + t + "'");
    }
    seen_any = true;
    out.push_back(v);
  }
  if (out.empty()) throw domain_error("ingest: " + path + " holds no numeric data");
  return out;
}

std::string model_name(assoc::Model m) {
  switch (m) {
    case assoc::Model::normal: return "normal";
    case assoc::Model::lognormal: return "lognormal";
    case assoc::Model::gamma: return "gamma";
    case assoc::Model::binomial: return "binomial";
    case assoc::Model::poisson_process: return "poisson_process";
  }
  return "unknown";
}

std::string target_name(const assoc::PredictionTarget& t) {
  using Kind = assoc::PredictionTarget::Kind;
  switch (t.kind) {
    case Kind::next_observation: return "next";
    case Kind::kth_largest_of_m:
      return "kth-of-m:" + std::to_string(t.m) + "," + std::to_string(t.k);
    case Kind::mean_of_m: return "mean-of-m:" + std::to_string(t.m);
    case Kind::max_of_m: return "max-of-m:" + std::to_string(t.m);
    case Kind::future_count: return "count-of-m:" + std::to_string(t.m);
    case Kind::arrival: return "arrival:" + std::to_string(t.k);
  }
  return "unknown";
}

std::string assertion_name(prs::AssertionKind k) {
  switch (k) {
    case prs::AssertionKind::right_sided: return "right";
    case prs::AssertionKind::left_sided: return "left";
    case prs::AssertionKind::singleton: return "singleton";
  }
  return "unknown";
}

nlohmann::json region_result_json(const ResultMeta& meta, const PredictionRegion& region,
                                  bool integer_bounds) {
  nlohmann::json j = meta_json(meta);
  j["region"] = {{"alpha", region.alpha},
                 {"kind", assertion_name(region.kind)},
                 {"lower", bound_json(region.lower, integer_bounds)},
                 {"upper", bound_json(region.upper, integer_bounds)}};
  return j;
}

nlohmann::json curve_result_json(const ResultMeta& meta, const plaus::PlausibilityCurve& curve) {
  nlohmann::json j = meta_json(meta);
  j["curve"] = {{"y", curve.grid}, {"plausibility", curve.plausibility}};
  return j;
}

nlohmann::json pit_result_json(const ResultMeta& meta, const validity::SimScenario& sc,
                               const validity::ValidityReport& report) {
  nlohmann::json j = meta_json(meta);
  j["report"] = {{"kind", "pit"},
                 {"replications", report.replications},
                 {"draws_per_replication", sc.mc_draws_per_rep},
                 {"ks_statistic", report.ks_statistic}};
  return j;
}

nlohmann::json coverage_result_json(const ResultMeta& meta, const validity::SimScenario& sc,
                                    const validity::ValidityReport& report) {
  nlohmann::json j = meta_json(meta);
  j["report"] = {{"kind", "coverage"},
                 {"replications", report.replications},
                 {"draws_per_replication", sc.mc_draws_per_rep},
                 {"target_coverage", 1.0 - sc.alpha},
                 {"coverage", report.coverage_estimate},
                 {"std_error", report.mc_standard_error}};
  return j;
}

std::string region_csv(const ResultMeta& meta, const PredictionRegion& region,
                       bool integer_bounds) {
  std::ostringstream os;
  os << "model,target,assertion,method,alpha,draws,seed,stream,lower,upper\n";
  os << csv_field(meta.model) << ',' << csv_field(meta.target) << ','
     << csv_field(meta.assertion) << ',' << csv_field(meta.method) << ',' << fmt_full(meta.alpha)
     << ',' << meta.draws << ',' << meta.seed << ',' << meta.stream << ','
     << bound_csv(region.lower, integer_bounds) << ',' << bound_csv(region.upper, integer_bounds)
     << '\n';
  return os.str();
}

std::string curve_csv(const plaus::PlausibilityCurve& curve) {
  std::ostringstream os;
  os << "y,plausibility\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    os << fmt_full(curve.grid[i]) << ',' << fmt_full(curve.plausibility[i]) << '\n';
  return os.str();
}

std::string pit_csv(const validity::ValidityReport& report) {
  std::ostringstream os;
  os << "replication,pit\n";
  for (std::size_t i = 0; i < report.pit_samples.size(); ++i)
    os << i << ',' << fmt_full(report.pit_samples[i]) << '\n';
  return os.str();
}

std::string coverage_csv(const validity::SimScenario& sc,
                         const validity::ValidityReport& report) {
  std::ostringstream os;
  os << "label,model,n,target,assertion,alpha,replications,draws,coverage,std_error\n";
  os << csv_field(sc.label) << ',' << model_name(sc.model) << ',' << sc.n << ','
     << csv_field(target_name(sc.target)) << ',' << assertion_name(sc.assertion) << ','
     << fmt_full(sc.alpha) << ',' << report.replications << ',' << sc.mc_draws_per_rep << ','
     << fmt_full(report.coverage_estimate) << ',' << fmt_full(report.mc_standard_error) << '\n';
  return os.str();
}

std::string grid_csv(const std::vector<validity::GridCellResult>& cells) {
  std::ostringstream os;
  os << "label,model,n,target,assertion,alpha,replications,draws,kind,coverage,std_error,ks,"
        "ok,error\n";
  for (const auto& c : cells) {
    const auto& sc = c.scenario;
    os << csv_field(sc.label) << ',' << model_name(sc.model) << ',' << sc.n << ','
       << csv_field(target_name(sc.target)) << ',' << assertion_name(sc.assertion) << ','
       << fmt_full(sc.alpha) << ',' << sc.replications << ',' << sc.mc_draws_per_rep << ','
       << (c.kind == validity::StudyKind::pit ? "pit" : "coverage") << ','
       << fmt_full(c.report.coverage_estimate) << ',' << fmt_full(c.report.mc_standard_error)
       << ',' << fmt_full(c.report.ks_statistic) << ',' << (c.ok ? "1" : "0") << ','
       << csv_field(c.error) << '\n';
  }
  return os.str();
}

std::string curve_svg(const plaus::PlausibilityCurve& curve, double alpha) {
  if (curve.grid.empty()) throw domain_error("curve_svg: empty curve");
  const double width = 720, height = 440;
  const double left = 70, right = 700, top = 20, bottom = 390;
  double xmin = curve.grid.front(), xmax = curve.grid.back();
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto py = [&](double pl) { return bottom - pl * (bottom - top); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
     << bottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // y ticks at 0, 0.5, 1
  for (double tick : {0.0, 0.5, 1.0}) {
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(tick) << "\" x2=\"" << left << "\" y2=\""
       << py(tick) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 10 << "\" y=\"" << py(tick) + 4
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt_short(tick)
       << "</text>\n";
  }
  // x ticks at min, middle, max
  for (double tick : {xmin, 0.5 * (xmin + xmax), xmax}) {
    os << "<line x1=\"" << px(tick) << "\" y1=\"" << bottom << "\" x2=\"" << px(tick)
       << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(tick) << "\" y=\"" << bottom + 20
       << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
       << fmt_short(tick) << "</text>\n";
  }
  os << "<text x=\"" << 0.5 * (left + right) << "\" y=\"" << height - 8
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">future value"
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << 0.5 * (top + bottom)
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 18 " << 0.5 * (top + bottom) << ")\">plausibility</text>\n";
  // alpha cut
  os << "<line x1=\"" << left << "\" y1=\"" << py(alpha) << "\" x2=\"" << right << "\" y2=\""
     << py(alpha) << "\" stroke=\"#c03030\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  os << "<text x=\"" << right - 4 << "\" y=\"" << py(alpha) - 5
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"#c03030\">"
     << "alpha = " << fmt_short(alpha) << "</text>\n";
  // the curve itself
  os << "<polyline fill=\"none\" stroke=\"#2060c0\" stroke-width=\"1.6\" points=\"";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (i) os << ' ';
    os << fmt_short(px(curve.grid[i])) << ',' << fmt_short(py(curve.plausibility[i]));
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace impred::io
