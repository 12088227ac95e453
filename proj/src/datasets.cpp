#include "impred/datasets.hpp"

namespace impred::data {

const std::vector<double>& soil_lead_offsite() {
  static const std::vector<double> v = {26, 63, 3, 70, 16, 5, 1, 57, 5, 3, 24, 2, 1, 48, 3};
  return v;
}

const std::vector<double>& soil_lead_onsite() {
  static const std::vector<double> v = {50, 82, 95, 103, 88};
  return v;
}

const std::vector<double>& machine_breakdowns() {
  static const std::vector<double> v = {18, 23, 29, 409, 24,  74,  13,  62, 46, 4,
                                        57, 19, 47, 13,  19,  208, 119, 209, 10, 188};
  return v;
}

std::vector<std::string_view> names() {
  return {"soil_lead_offsite", "soil_lead_onsite", "machine_breakdowns"};
}

std::optional<std::vector<double>> by_name(std::string_view name) {
  if (name == "soil_lead_offsite") return soil_lead_offsite();
  if (name == "soil_lead_onsite") return soil_lead_onsite();
  if (name == "machine_breakdowns") return machine_breakdowns();
  return std::nullopt;
}

}  // namespace impred::data
