#include "k3lat/matq.hpp"

#include <algorithm>
#include <sstream>

namespace k3lat {

QMat QMat::identity(int n) {
    QMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

QVec QMat::row(int i) const {
    QVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

QMat to_q(const ZMat& A) {
    QMat B(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B.at(i, j) = Q(A.at(i, j));
    return B;
}

QVec to_q(const ZVec& v) {
    QVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Q(v[i]);
    return w;
}

bool to_z(const QMat& A, ZMat& out) {
    out = ZMat(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            const Q& q = A.at(i, j);
            if (q.get_den() != 1) return false;
            out.at(i, j) = q.get_num();
        }
    return true;
}

bool to_z(const QVec& v, ZVec& out) {
    out.assign(v.size(), Z(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) return false;
        out[i] = v[i].get_num();
    }
    return true;
}

ZMat clear_denominators(const QMat& A, Z* scale) {
    Z l = 1;
    for (const Q& q : A.a) {
        Z d = q.get_den();
        l = l / zgcd(l, d) * d;
    }
    ZMat B(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            Q s = A.at(i, j) * Q(l);
            B.at(i, j) = s.get_num();
        }
    if (scale) *scale = l;
    return B;
}

ZVec clear_denominators(const QVec& v, Z* scale) {
    Z l = 1;
    for (const Q& q : v) {
        Z d = q.get_den();
        l = l / zgcd(l, d) * d;
    }
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Q s = v[i] * Q(l);
        w[i] = s.get_num();
    }
    if (scale) *scale = l;
    return w;
}

QMat mul(const QMat& A, const QMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix size mismatch");
    QMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Q& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

QVec mul(const QMat& A, const QVec& x) {
    if (A.cols != static_cast<int>(x.size())) throw std::invalid_argument("matrix size mismatch");
    QVec y(A.rows, Q(0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

QVec mul_row(const QVec& x, const QMat& A) {
    if (A.rows != static_cast<int>(x.size())) throw std::invalid_argument("matrix size mismatch");
    QVec y(A.cols, Q(0));
    for (int i = 0; i < A.rows; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < A.cols; ++j) y[j] += x[i] * A.at(i, j);
    }
    return y;
}

QMat transpose(const QMat& A) {
    QMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

QMat add(const QMat& A, const QMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix size mismatch");
    QMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

QMat sub(const QMat& A, const QMat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matrix size mismatch");
    QMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

QMat scale(const Q& c, const QMat& A) {
    QMat B = A;
    for (Q& x : B.a) x *= c;
    return B;
}

Q dot(const QVec& x, const QVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    Q s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

QVec add(const QVec& x, const QVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

QVec sub(const QVec& x, const QVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

QVec scale(const Q& c, const QVec& x) {
    QVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
    return z;
}

bool is_zero(const QVec& x) {
    for (const Q& v : x)
        if (v != 0) return false;
    return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& M) {
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < M.cols && r < M.rows; ++j) {
        int p = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, j) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int c = 0; c < M.cols; ++c) std::swap(M.at(r, c), M.at(p, c));
        Q inv = 1 / M.at(r, j);
        for (int c = 0; c < M.cols; ++c) M.at(r, c) *= inv;
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || M.at(i, j) == 0) continue;
            Q f = M.at(i, j);
            for (int c = 0; c < M.cols; ++c) M.at(i, c) -= f * M.at(r, c);
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank_q(const QMat& A) {
    QMat M = A;
    return static_cast<int>(rref(M).size());
}

Q det_q(const QMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant of non-square matrix");
    QMat M = A;
    Q d = 1;
    for (int k = 0; k < M.rows; ++k) {
        int p = -1;
        for (int i = k; i < M.rows; ++i)
            if (M.at(i, k) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != k) {
            for (int c = 0; c < M.cols; ++c) std::swap(M.at(k, c), M.at(p, c));
            d = -d;
        }
        d *= M.at(k, k);
        Q inv = 1 / M.at(k, k);
        for (int i = k + 1; i < M.rows; ++i) {
            if (M.at(i, k) == 0) continue;
            Q f = M.at(i, k) * inv;
            for (int c = k; c < M.cols; ++c) M.at(i, c) -= f * M.at(k, c);
        }
    }
    return d;
}

bool solve_q(const QMat& A, const QVec& b, QVec& x) {
    QMat M(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, A.cols) = b[i];
    }
    std::vector<int> piv = rref(M);
    for (int p : piv)
        if (p == A.cols) return false;  // row (0 ... 0 | 1): inconsistent
    x.assign(A.cols, Q(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M.at(static_cast<int>(r), A.cols);
    return true;
}

QMat inverse(const QMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = A.rows;
    QMat M(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, n + i) = 1;
    }
    std::vector<int> piv = rref(M);
    if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
        throw std::invalid_argument("singular matrix");
    QMat R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = M.at(i, n + j);
    return R;
}

QMat kernel_q(const QMat& A) {
    QMat M = A;
    std::vector<int> piv = rref(M);
    std::vector<int> free_cols;
    {
        std::size_t k = 0;
        for (int j = 0; j < A.cols; ++j) {
            if (k < piv.size() && piv[k] == j)
                ++k;
            else
                free_cols.push_back(j);
        }
    }
    QMat K(static_cast<int>(free_cols.size()), A.cols);
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        int j = free_cols[f];
        K.at(static_cast<int>(f), j) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            K.at(static_cast<int>(f), piv[r]) = -M.at(static_cast<int>(r), j);
    }
    return K;
}

QMat diagonalize_sym(const QMat& G, QVec& diag) {
    if (G.rows != G.cols) throw std::invalid_argument("symmetric diagonalization of non-square matrix");
    int n = G.rows;
    QMat M = G;
    QMat P = QMat::identity(n);
    auto col_addmul = [&](QMat& X, int i, int j, const Q& c) {
        // col_i += c * col_j
        for (int r = 0; r < X.rows; ++r) X.at(r, i) += c * X.at(r, j);
    };
    auto row_addmul = [&](QMat& X, int i, int j, const Q& c) {
        for (int cidx = 0; cidx < X.cols; ++cidx) X.at(i, cidx) += c * X.at(j, cidx);
    };
    auto swap_basis = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < n; ++r) std::swap(M.at(r, i), M.at(r, j));
        for (int c = 0; c < n; ++c) std::swap(M.at(i, c), M.at(j, c));
        for (int r = 0; r < n; ++r) std::swap(P.at(r, i), P.at(r, j));
    };
    for (int k = 0; k < n; ++k) {
        if (M.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, i) != 0) {
                    p = i;
                    break;
                }
            if (p >= 0) {
                swap_basis(k, p);
            } else {
                // All remaining diagonal entries vanish; borrow an off-diagonal
                // entry (e_i += e_j doubles it onto the diagonal).
                int bi = -1, bj = -1;
                for (int i = k; i < n && bi < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (M.at(i, j) != 0) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi < 0) break;  // trailing block identically zero
                row_addmul(M, bi, bj, Q(1));
                col_addmul(M, bi, bj, Q(1));
                col_addmul(P, bi, bj, Q(1));
                swap_basis(k, bi);
            }
        }
        Q piv = M.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (M.at(i, k) == 0) continue;
            Q c = -M.at(i, k) / piv;
            row_addmul(M, i, k, c);
            col_addmul(M, i, k, c);
            col_addmul(P, i, k, c);
        }
    }
    diag.assign(n, Q(0));
    for (int i = 0; i < n; ++i) diag[i] = M.at(i, i);
    return P;
}

Inertia signature_q(const QMat& G) {
    QVec d;
    diagonalize_sym(G, d);
    Inertia s;
    for (const Q& x : d) {
        if (x > 0)
            ++s.pos;
        else if (x < 0)
            ++s.neg;
        else
            ++s.zero;
    }
    return s;
}

std::string to_string(const QVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string to_string(const QMat& A) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < A.rows; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < A.cols; ++j) os << (j ? "," : "") << A.at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace k3lat
