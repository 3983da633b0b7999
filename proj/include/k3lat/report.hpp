#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/matz.hpp"

namespace k3lat {

// a fully parsed request, shared by the command line tool and the tests
struct Request {
    std::string command;  // lattice-info | discriminant | admissible | walls-enum |
                          // classify | extend | monodromy
    std::string lattice;  // lattice expression (lattice-info, discriminant, monodromy)
    std::string ambient;  // ambient expression for sublattice commands
    std::vector<ZVec> basis;
    std::string spec;  // wall spec text; empty selects the standard spec for n
    int n = 2;
    std::optional<ZVec> base;         // domain base point in sublattice coordinates
    std::vector<ZVec> cone_rays;      // explicit cone for walls-enum
    bool signed_walls = false;        // emit the signed closure as well
    std::optional<ZVec> signed_base;  // orient signed walls against this vector
    std::optional<Z> level_bound;     // user search bound for walls-enum
    std::optional<ZMat> phi;          // extend: isometry of the sublattice
    std::optional<ZMat> psi;          // extend: isometry of the complement
    std::optional<ZMat> matrix;       // monodromy: ambient matrix
    bool dot = false;                 // classify: DOT graph output
    bool simple_flags = false;        // classify: per-chamber wall flags
    int level_budget = 256;
    long group_cap = 20000;
    long fp_budget = 4000;
    std::vector<ZVec> witnesses;  // known ambient wall divisors
};

struct RunResult {
    int exit_code = 0;   // 0 ok, 1 domain error, 2 parse error
    std::string output;  // JSON or DOT text, newline terminated
};

RunResult run(const Request& req);

// fill ambient/basis/spec/base/n/witnesses from a named preset
void apply_preset(Request& req, const std::string& name);

// JSON input helpers; throw ParseError on malformed input
ZVec zvec_from_json(const std::string& text);
ZMat zmat_from_json(const std::string& text);
void sublattice_from_json(const std::string& text, std::string& ambient,
                          std::vector<ZVec>& basis);

}  // namespace k3lat
