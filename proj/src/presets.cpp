#include "k3lat/presets.hpp"

#include <stdexcept>

namespace k3lat {

namespace {

constexpr int AMB = 23;

ZVec unit(int i) {
    ZVec v(AMB, Z(0));
    v[i] = 1;
    return v;
}

ZVec units(int i, int j, int ci = 1, int cj = 1) {
    ZVec v(AMB, Z(0));
    v[i] = ci;
    v[j] = cj;
    return v;
}

std::vector<Preset> build() {
    std::vector<Preset> all;
    {
        // rank-two sublattice spanned by a square-two and a square-minus-two class
        Preset p;
        p.name = "ex-comp";
        p.ambient = "L2";
        p.basis = {units(0, 1), unit(22)};
        p.base = {Z(1), Z(0)};
        p.spec = "-2, -10:div2";
        p.n = 2;
        all.push_back(p);
    }
    {
        // rank-two sublattice with a non-split wall divisor
        Preset p;
        p.name = "ex-nonsep";
        p.ambient = "L2";
        p.basis = {units(0, 2), units(1, 3)};
        p.base = {Z(1), Z(1)};
        p.spec = "-2, -10:div2";
        p.n = 2;
        ZVec w(AMB, Z(0));
        w[0] = 2;
        w[1] = -2;
        w[22] = 1;
        p.witnesses = {w};
        all.push_back(p);
    }
    {
        // rank-four sublattice with a six-chamber decomposition
        Preset p;
        p.name = "ex-four";
        p.ambient = "L2";
        p.basis = {units(0, 1), units(2, 3, 1, -1), units(4, 5, 1, -1), unit(22)};
        p.base = {Z(1), Z(0), Z(0), Z(0)};
        p.spec = "-2, -10:div2";
        p.n = 2;
        all.push_back(p);
    }
    return all;
}

}  // namespace

const Preset& get_preset(const std::string& name) {
    static const std::vector<Preset> all = build();
    for (const Preset& p : all)
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    static const std::vector<Preset> all = build();
    std::vector<std::string> out;
    for (const Preset& p : all) out.push_back(p.name);
    return out;
}

}  // namespace k3lat
