#pragma once

// Sublattices of a fixed ambient lattice, presented by basis rows in ambient
// coordinates, together with saturation, orthogonal complements, rational
// projections, and the glue description of a primitive decomposition
// L >= S + K of finite index: H = L/(S + K) embeds into A_S + A_K, and the
// graph of the anti-isometry gamma : H_S -> H_K is recorded through the glue
// generators' classes on both sides.

#include "k3lat/discriminant.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

struct Sublattice {
    Lattice ambient;
    ZMat basis;   // r x N, independent rows, ambient coordinates
    ZMat gram;    // induced form B G B^T (may be degenerate)

    int rank() const { return basis.rows; }
};

// Checked constructor: rows independent, sizes consistent.
Sublattice make_sublattice(const Lattice& L, const ZMat& basis_rows);

// The sublattice as an abstract lattice (requires nondegenerate induced form).
Lattice as_lattice(const Sublattice& S, const std::string& name = "");

bool is_primitive(const Sublattice& S);
Z saturation_index(const Sublattice& S);
Sublattice saturate(const Sublattice& S);

// Primitive orthogonal complement; throws if the induced form on the result
// is degenerate (which happens exactly when S itself is degenerate).
Sublattice orthogonal_complement(const Sublattice& S);

// Membership of an ambient vector in the sublattice (integer coordinates).
bool contains(const Sublattice& S, const ZVec& x, ZVec* coords = nullptr);

// Rational projection onto S tensor Q along its orthogonal complement.
// Requires S nondegenerate.  Result in ambient coordinates.
QVec project(const Sublattice& S, const QVec& x);
QVec project(const Sublattice& S, const ZVec& x);

// Coordinates of the projection with respect to the rows of S.basis.
QVec project_coords(const Sublattice& S, const QVec& x);
QVec project_coords(const Sublattice& S, const ZVec& x);

// Ambient coordinates of a vector given in S-basis coordinates.
ZVec to_ambient(const Sublattice& S, const ZVec& c);
QVec to_ambient(const Sublattice& S, const QVec& c);

struct GlueData {
    Sublattice S, K;
    DiscriminantGroup AS, AK;
    // One entry per glue generator: classes in decomposition coordinates on
    // both sides, and the generator's order in H = L/(S + K).
    std::vector<ZVec> hs_dec, hk_dec;
    std::vector<Z> orders;
    Z glue_order;  // |H|
};

// Glue description of the decomposition S + K <= L.  Both sublattices must
// be primitive and nondegenerate, mutually orthogonal, with ranks summing to
// the ambient rank.
GlueData glue(const Sublattice& S, const Sublattice& K);

// Convenience: glue S against its orthogonal complement.
GlueData glue(const Sublattice& S);

// Dual vector of a class on the S side / K side from decomposition coords.
QVec glue_dual_S(const GlueData& g, const ZVec& dec);
QVec glue_dual_K(const GlueData& g, const ZVec& dec);

}  // namespace k3lat
