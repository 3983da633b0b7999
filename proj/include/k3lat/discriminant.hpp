#pragma once

// Discriminant group A_L = L*/L of an even nondegenerate lattice, with its
// torsion quadratic form q(x + L) = (x, x) mod 2Z (representatives in [0,2))
// and pairing mod Z (representatives in [0,1)).
//
// Elements are handled in two coordinate systems: as dual vectors (rational
// coordinate columns w with G w integral), and as coefficient tuples with
// respect to the canonical generators ("decomposition coordinates", one
// residue mod d_i per invariant factor d_i > 1).

#include "k3lat/lattice.hpp"

namespace k3lat {

struct DiscriminantGroup {
    Lattice L;
    ZVec invariants;            // d_i > 1, ascending divisibility chain
    std::vector<QVec> gens;     // dual vectors, coordinates reduced into [0,1)
    QVec qvals;                 // q(gen_i) in [0,2)
    QMat pairing;               // pairing(gen_i, gen_j) in [0,1)
    Z order;                    // |A_L| = product of invariants

    // Internals for decomposition: U from the Smith form of the Gram matrix
    // and the full diagonal (including trivial factors).
    ZMat snf_U;
    ZVec snf_diag;
    std::vector<int> gen_pos;   // positions of the nontrivial factors
};

DiscriminantGroup discriminant_group(const Lattice& L);

// True iff w has integral pairing with the whole lattice (w in L*).
bool in_dual(const Lattice& L, const QVec& w);

// Decomposition coordinates of the class of w in A_L: one residue in
// [0, d_i) per generator.  Requires w in L*.
ZVec disc_decompose(const DiscriminantGroup& A, const QVec& w);

// Dual-vector representative of a decomposition tuple, reduced into [0,1).
QVec disc_vector(const DiscriminantGroup& A, const ZVec& coeffs);

// q and pairing of classes given by dual vectors, canonical representatives.
Q disc_q(const DiscriminantGroup& A, const QVec& w);
Q disc_pairing(const DiscriminantGroup& A, const QVec& v, const QVec& w);

// Subgroup membership with coefficients: is t (decomposition coords) in the
// subgroup generated by gens_dec?  On success coeffs holds integers c with
// sum c_j gens_dec[j] = t in A_L.
bool subgroup_solve(const DiscriminantGroup& A, const std::vector<ZVec>& gens_dec, const ZVec& t,
                    ZVec& coeffs);

// Reduce a dual vector coordinatewise into [0,1); in lattice coordinates this
// is reduction modulo L, giving the canonical representative of the class.
QVec reduce_mod_one(const QVec& w);

}  // namespace k3lat
