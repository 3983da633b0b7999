#pragma once

// Wall-divisor predicates and the complete enumeration of wall hyperplanes
// crossing a cone inside the positive cone of a hyperbolic sublattice.

#include <optional>

#include "k3lat/cones.hpp"
#include "k3lat/sublattice.hpp"

namespace k3lat {

// allowed (norm, ambient divisibility) pairs; divisibility 0 = unconstrained
struct WallSpec {
    std::vector<std::pair<Z, Z>> allowed;
};

// text form: comma-separated norms with optional ":div<k>", e.g. "-2,-10:div2"
WallSpec parse_wall_spec(const std::string& text);
std::string to_string(const WallSpec& spec);

// the wall-divisor norms of the n = 2 deformation type
WallSpec standard_wall_spec(int n = 2);

// primitive nonzero delta: norm -2, or norm -10 with ambient divisibility 2
bool is_wall_divisor_n2(const Lattice& L, const ZVec& delta);

// does a primitive nonzero class match one of the allowed (norm, div) pairs?
bool matches_wall_spec(const Lattice& L, const ZVec& delta, const WallSpec& spec);

// both orthogonal projections of delta (to M and its complement) carry
// strictly negative norm
bool in_LnM(const Lattice& L, const Sublattice& M, const ZVec& delta);

// wall divisor whose hyperplane cuts the positive cone of M
bool in_Delta_M(const Lattice& L, const Sublattice& M, const ZVec& delta, const WallSpec& spec);

struct WallEnumResult {
    std::vector<ZVec> classes;  // sign-canonical reps in M coordinates, lex sorted
    std::string certificate;    // "complete" | "bounded_search"
};

// primitive classes of M matching spec whose hyperplanes meet the relative
// interior of C; one representative per +-pair.  A user level bound replaces
// the derived complete one and downgrades the certificate.
WallEnumResult enumerate_walls_in_cone(const Sublattice& M, const Cone& C, const WallSpec& spec,
                                       const std::optional<Z>& level_bound = std::nullopt);

// low-level level enumeration: all x with (x, x) = N whose hyperplane meets
// relint(C); primitivity optional, no divisibility filtering
std::vector<ZVec> enumerate_norm_crossing(const ZMat& gram, const Cone& C, const Z& N,
                                          bool require_primitive,
                                          const std::optional<Z>& level_bound, bool* complete);

// signed views of a canonical class list
std::vector<ZVec> signed_closure(const std::vector<ZVec>& classes);
// (class, base) > 0 keeps the oriented class, < 0 flips it, = 0 emits both
std::vector<ZVec> signed_against_base(const std::vector<ZVec>& classes, const ZMat& gram,
                                      const ZVec& base);

}  // namespace k3lat
