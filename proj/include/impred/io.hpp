#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "impred/assoc.hpp"
#include "impred/plaus.hpp"
#include "impred/region.hpp"
#include "impred/validity.hpp"

namespace impred::io {

// Single-column numeric file, optional one-line header; errors carry the
// offending line number.
std::vector<double> ingest(const std::string& path);

// Input echo attached to every machine-readable result.
struct ResultMeta {
  std::string model;
  std::string target;
  std::string assertion;
  std::string method;  // "monte_carlo" or "closed_form"
  double alpha = 0.0;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

std::string model_name(assoc::Model m);
std::string target_name(const assoc::PredictionTarget& t);
std::string assertion_name(prs::AssertionKind k);

nlohmann::json region_result_json(const ResultMeta& meta, const PredictionRegion& region,
                                  bool integer_bounds);
nlohmann::json curve_result_json(const ResultMeta& meta, const plaus::PlausibilityCurve& curve);
nlohmann::json pit_result_json(const ResultMeta& meta, const validity::SimScenario& sc,
                               const validity::ValidityReport& report);
nlohmann::json coverage_result_json(const ResultMeta& meta, const validity::SimScenario& sc,
                                    const validity::ValidityReport& report);

std::string region_csv(const ResultMeta& meta, const PredictionRegion& region,
                       bool integer_bounds);
std::string curve_csv(const plaus::PlausibilityCurve& curve);
std::string pit_csv(const validity::ValidityReport& report);
std::string coverage_csv(const validity::SimScenario& sc, const validity::ValidityReport& report);
std::string grid_csv(const std::vector<validity::GridCellResult>& cells);

// Self-contained SVG 1.1 plot of a plausibility curve with the alpha cut.
std::string curve_svg(const plaus::PlausibilityCurve& curve, double alpha);

}  // namespace impred::io
