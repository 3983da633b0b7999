#pragma once

// Dense integer matrices with the normal-form machinery the lattice layer
// needs: Smith normal form with transforms, row Hermite form, saturated
// kernels, integer linear solves and the Bareiss determinant.  Sizes here are
// tiny (rank <= 23), so everything is straightforward dense arithmetic.

#include "k3lat/common.hpp"

namespace k3lat {

struct ZMat {
    int rows = 0, cols = 0;
    std::vector<Z> a;  // row-major

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Z(0)) {}

    Z& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Z& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static ZMat identity(int n);
    static ZMat from_rows(const std::vector<ZVec>& rows);

    ZVec row(int i) const;
    ZVec col(int j) const;
    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

ZMat mul(const ZMat& A, const ZMat& B);
ZVec mul(const ZMat& A, const ZVec& x);       // A * column vector
ZVec mul_row(const ZVec& x, const ZMat& A);   // row vector * A
ZMat transpose(const ZMat& A);
ZMat neg(const ZMat& A);
ZMat add(const ZMat& A, const ZMat& B);
ZMat sub(const ZMat& A, const ZMat& B);
bool is_zero(const ZMat& A);

Z dot(const ZVec& x, const ZVec& y);
ZVec add(const ZVec& x, const ZVec& y);
ZVec sub(const ZVec& x, const ZVec& y);
ZVec scale(const Z& c, const ZVec& x);
bool is_zero(const ZVec& x);

// Divide a nonzero vector by the gcd of its entries and make the first
// nonzero entry positive.  Canonical representative of {v, -v} up to scale.
ZVec primitive_part(const ZVec& v);

// Divide a nonzero vector by the gcd of its entries, keeping its direction.
ZVec primitive_dir(const ZVec& v);

// Lexicographic comparison, used everywhere a deterministic order is needed.
bool lex_less(const ZVec& x, const ZVec& y);

// Determinant by fraction-free Bareiss elimination (square input).
Z det(const ZMat& A);

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... | d_r >= 0 followed by zeros.  Vinv tracks V^{-1} so
// callers can read off saturations without a separate inversion.
struct Smith {
    ZMat D, U, V, Vinv;
    int rank = 0;
};
Smith smith(const ZMat& A);

// Row Hermite normal form (echelon, nonnegative pivots, entries above a pivot
// reduced); returns the form with zero rows dropped.
ZMat hnf_rows(const ZMat& A);

// Basis of the saturated right kernel {x : A x = 0}, one generator per row.
ZMat kernel(const ZMat& A);

// One integer solution of A x = b, if any.
bool solve(const ZMat& A, const ZVec& b, ZVec& x);

// Saturation of the row span inside Z^cols: smallest primitive sublattice of
// Z^cols containing the rows.  Also reports the index of the span in it
// (product of the nontrivial elementary divisors); index 1 <=> rows span a
// primitive sublattice.  Rows must be linearly independent.
ZMat saturate_rows(const ZMat& B, Z* index = nullptr);

int rank_z(const ZMat& A);

std::string to_string(const ZVec& v);
std::string to_string(const ZMat& A);

}  // namespace k3lat
