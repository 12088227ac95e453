#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace impred::data {

// Bundled example data, each in its original units.

// Lead concentration (mg/kg) in 15 off-site soil samples near a cleanup site.
const std::vector<double>& soil_lead_offsite();

// Lead concentration (mg/kg) in 5 on-site soil samples from the same study.
const std::vector<double>& soil_lead_onsite();

// 20 observed times (hours) between machine breakdowns.
const std::vector<double>& machine_breakdowns();

std::vector<std::string_view> names();
std::optional<std::vector<double>> by_name(std::string_view name);

}  // namespace impred::data
