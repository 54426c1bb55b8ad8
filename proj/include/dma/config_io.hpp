#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dma/params.hpp"

namespace dma {

// Flat "key = value" settings, '#' starts a comment. Keys are the ScenarioConfig and
// DmaDesign field names in SI units, plus phi_t_deg (degrees) and d_x_lambda
// (spacing in carrier wavelengths). f_t sets both the carrier and the design centre.
using Settings = std::map<std::string, std::string, std::less<>>;

const std::vector<std::string> &config_keys();

Settings parse_settings(std::istream &in);
Settings read_settings_file(const std::filesystem::path &path);

// Applies f_t first. When f_t changes and neither d_x nor d_x_lambda is given, d_x
// follows as a quarter wavelength. Unknown keys and malformed values throw.
void apply_settings(const Settings &settings, ScenarioConfig &cfg, DmaDesign &design);

void write_settings(std::ostream &out, const ScenarioConfig &cfg, const DmaDesign &design);

} // namespace dma
