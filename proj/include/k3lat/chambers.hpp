#pragma once

// Fundamental domains of reflection groups (Vinberg's algorithm), chamber
// decompositions of the domain by wall hyperplanes, polyhedron symmetries
// with membership verdicts, orbit counts and per-chamber wall-class flags.

#include <array>
#include <optional>

#include "k3lat/isometry.hpp"
#include "k3lat/walls.hpp"

namespace k3lat {

struct Polyhedron {
    Sublattice M;
    std::vector<ZVec> facets;    // essential inward root normals (M coordinates)
    std::vector<ZVec> vertices;  // primitive extreme rays
    std::vector<ZVec> roots;     // all accepted roots
    Cone cone;                   // polyhedral description; empty when full_cone
    bool full_cone = false;      // no roots and a round positive cone (rank >= 3)
    std::string certificate;     // "complete" | "incomplete"
};

// Fundamental domain, containing (a perturbation of) base, of the group
// generated by reflections in the vectors matching root_norms.  Terminates
// with certificate "complete" through one of three routes: a finite-volume
// check, the complete rank-2 enumeration, or a residue certificate that no
// roots exist.
Polyhedron vinberg_domain(const Sublattice& M, const WallSpec& root_norms, const ZVec& base,
                          int level_budget = 256);

// deterministic positive-norm base point for a hyperbolic gram matrix
ZVec default_base(const ZMat& gram);

struct Chamber {
    std::vector<int> signs;      // +1 / -1 per wall
    std::vector<ZVec> vertices;  // primitive rays, lex sorted
    Cone cone;
    QVec witness;                // interior point
};

struct ChamberComplex {
    std::vector<ZVec> walls;                    // canonical unsigned reps, lex sorted
    std::vector<Chamber> chambers;              // sorted by sign vector, +1 before -1
    std::vector<std::array<int, 3>> adjacency;  // {i, j, wall index}, i < j
};

// Cut the region along the listed wall hyperplanes.  Walls not meeting the
// interior are dropped.
ChamberComplex chamber_decomposition(const Polyhedron& region, const std::vector<ZVec>& walls);

struct SymmetryVerdict {
    ZMat sigma;                   // isometry of M, M coordinates
    std::string verdict;          // "member" | "non_member" | "undecided"
    std::optional<ZMat> psi;      // companion on the complement (member)
    std::optional<ZMat> ambient;  // monodromy extension (member)
    std::optional<ExtendCertificate> obstruction;  // non_member
};

// All isometries of M permuting the vertices of P, each with a monodromy
// membership verdict.  non_member is only issued on the psi-independent
// obstruction (the induced map does not preserve the glue subgroup).
std::vector<SymmetryVerdict> polyhedron_symmetries(const Polyhedron& P, int n,
                                                   const std::vector<ZMat>& extra_psi = {});

struct ConeCount {
    std::optional<Z> count;  // |W| * chambers when W is finite
    std::string reason;      // "finite" | "infinite_reflection_group" | "group_cap_exceeded"
    std::optional<Z> weyl_order;
};
ConeCount chamber_count_in_cone(const Polyhedron& P, std::size_t chambers, long group_cap = 20000);

struct OrbitCount {
    int lower = 0;  // undecided symmetries merged in as well
    int upper = 0;  // member symmetries only
};
OrbitCount chamber_orbits(const ChamberComplex& cx, const ZMat& gram,
                          const std::vector<SymmetryVerdict>& syms);

// Three-valued per-chamber flag for the existence of an ambient wall class
// whose hyperplane crosses the chamber; "nonempty" carries a witness,
// "empty" is certified by the complete projection enumeration.
struct SimpleFlag {
    std::string flag;  // "nonempty" | "empty" | "undetermined"
    std::optional<ZVec> witness;
};
std::vector<SimpleFlag> chamber_simple_flags(const Sublattice& M, const ChamberComplex& cx,
                                             const WallSpec& spec,
                                             const std::vector<ZVec>& known_witnesses = {},
                                             long fp_budget = 4000);

}  // namespace k3lat
