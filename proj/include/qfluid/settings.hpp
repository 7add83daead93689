#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qfluid/core.hpp"

namespace qfluid {

/// Everything needed to reproduce one run, in flat form. The grid is centred
/// on the origin.
struct Settings {
    PhysicalParams params;
    RunConfig config;
    double dx = 1.0;
    std::size_t n = 160;

    static Settings from(const Scenario& s);
    [[nodiscard]] SpatialGrid grid() const { return make_centered_grid(dx, n); }
};

/// Sets one key from its text value. Throws InvalidArgument on an unknown key
/// or a malformed value.
void apply_setting(Settings& s, std::string_view key, std::string_view value);

/// Reads `key = value` lines; `#` starts a comment, blank lines are ignored.
void apply_config(Settings& s, std::istream& in);
void apply_config_file(Settings& s, const std::filesystem::path& path);

/// All keys with their current values, in the file format accepted above.
std::string to_config_text(const Settings& s);

}  // namespace qfluid
