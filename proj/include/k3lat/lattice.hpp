#pragma once

// Even nondegenerate integral lattices presented by Gram matrices, plus the
// small expression grammar used to build them:
//
//   expr := term ("+" term)*
//   term := atom ("(" integer ")")?          ( rescaling L(n) )
//   atom := "U" | "E8" | "<" integer ">" | "LK3" | "L2" | "Ln(" integer ")"
//         | integer "*" atom                  ( repeated direct sum )
//
// Vectors are coordinate columns with respect to the implied basis; the
// pairing is (x, y) = x^T G y.

#include "k3lat/common.hpp"
#include "k3lat/matq.hpp"
#include "k3lat/matz.hpp"

namespace k3lat {

struct Lattice {
    int rank = 0;
    ZMat gram;
    std::string name;
};

// Checked constructor: symmetric, even diagonal, nonzero determinant.
Lattice make_lattice(const ZMat& gram, const std::string& name = "");

Lattice lattice_U();
Lattice lattice_E8();          // positive definite
Lattice lattice_span(const Z& k);  // <k>, k even and nonzero
Lattice rescale(const Lattice& L, const Z& n);
Lattice direct_sum(const Lattice& A, const Lattice& B);
Lattice lattice_LK3();         // 3U + 2E8(-1)
Lattice lattice_Ln(int n);     // LK3 + <2-2n>, n >= 2
Lattice lattice_L2();          // lattice_Ln(2), rank 23

// Parse the grammar above; throws ParseError with the offending offset.
Lattice parse_lattice(const std::string& spec);

Z inner(const Lattice& L, const ZVec& v, const ZVec& w);
Z norm(const Lattice& L, const ZVec& v);
Q inner_q(const Lattice& L, const QVec& v, const QVec& w);
Q norm_q(const Lattice& L, const QVec& v);

// (positive, negative) inertia; zero count is always 0 for a Lattice.
std::pair<int, int> signature(const Lattice& L);

// divisibility div(v) = gcd of (v, x) over x in L; errors on the zero vector.
Z divisibility(const Lattice& L, const ZVec& v);

Z determinant(const Lattice& L);

bool same_gram(const Lattice& A, const Lattice& B);

}  // namespace k3lat
