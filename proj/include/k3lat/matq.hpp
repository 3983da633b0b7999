#pragma once

// Dense rational matrices: Gaussian elimination, solves, inverses, kernels,
// and congruence diagonalization of symmetric forms (signature computation).

#include "k3lat/common.hpp"
#include "k3lat/matz.hpp"

namespace k3lat {

struct QMat {
    int rows = 0, cols = 0;
    std::vector<Q> a;  // row-major

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Q(0)) {}

    Q& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Q& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static QMat identity(int n);
    QVec row(int i) const;
    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

QMat to_q(const ZMat& A);
QVec to_q(const ZVec& v);

// If every entry is integral, write it to out and return true.
bool to_z(const QMat& A, ZMat& out);
bool to_z(const QVec& v, ZVec& out);

// Multiply through by the lcm of denominators; returns the primitive integer
// matrix and ignores overall scale.
ZMat clear_denominators(const QMat& A, Z* scale = nullptr);
ZVec clear_denominators(const QVec& v, Z* scale = nullptr);

QMat mul(const QMat& A, const QMat& B);
QVec mul(const QMat& A, const QVec& x);
QVec mul_row(const QVec& x, const QMat& A);
QMat transpose(const QMat& A);
QMat add(const QMat& A, const QMat& B);
QMat sub(const QMat& A, const QMat& B);
QMat scale(const Q& c, const QMat& A);

Q dot(const QVec& x, const QVec& y);
QVec add(const QVec& x, const QVec& y);
QVec sub(const QVec& x, const QVec& y);
QVec scale(const Q& c, const QVec& x);
bool is_zero(const QVec& x);

int rank_q(const QMat& A);
Q det_q(const QMat& A);

// Solve A x = b over Q; false if inconsistent.
bool solve_q(const QMat& A, const QVec& b, QVec& x);

// Inverse of a square nonsingular matrix; throws std::invalid_argument if
// singular.
QMat inverse(const QMat& A);

// Basis (rows) of the right kernel over Q.
QMat kernel_q(const QMat& A);

// Signature of a symmetric rational matrix by simultaneous row/column
// reduction: returns (positive, negative, zero) inertia counts.
struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};
Inertia signature_q(const QMat& G);

// Congruence transform to diagonal form: returns P with P^T G P diagonal;
// the diagonal entries come back in diag.
QMat diagonalize_sym(const QMat& G, QVec& diag);

std::string to_string(const QVec& v);
std::string to_string(const QMat& A);

}  // namespace k3lat
