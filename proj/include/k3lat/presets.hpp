#pragma once

#include <string>
#include <vector>

#include "k3lat/matz.hpp"

namespace k3lat {

// worked example configurations shipped with the tool
struct Preset {
    std::string name;
    std::string ambient;          // lattice expression for the ambient lattice
    std::vector<ZVec> basis;      // sublattice basis rows in ambient coordinates
    ZVec base;                    // base point in sublattice coordinates
    std::string spec;             // wall spec text
    int n = 2;                    // deformation parameter
    std::vector<ZVec> witnesses;  // known ambient wall divisors, if any
};

const Preset& get_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace k3lat
