#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qfluid/core.hpp"

namespace qfluid {

/// A named experiment: the default scenario with one protocol bound to it.
struct Preset {
    std::string name;
    std::string summary;
    Scenario scenario;
};

const std::vector<Preset>& presets();

/// Throws InvalidArgument for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace qfluid
