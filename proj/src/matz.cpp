#include "k3lat/matz.hpp"

#include <algorithm>
#include <sstream>

namespace k3lat {

ZMat ZMat::identity(int n) {
    ZMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

ZMat ZMat::from_rows(const std::vector<ZVec>& rows) {
    if (rows.empty()) return ZMat(0, 0);
    ZMat A(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < A.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != A.cols)
            throw std::invalid_argument("ragged row list");
        for (int j = 0; j < A.cols; ++j) A.at(i, j) = rows[i][j];
    }
    return A;
}

ZVec ZMat::row(int i) const {
    ZVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

ZVec ZMat::col(int j) const {
    ZVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

ZMat mul(const ZMat& A, const ZMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix size mismatch");
    ZMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Z& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

ZVec mul(const ZMat& A, const ZVec& x) {
    if (A.cols != static_cast<int>(x.size())) throw std::invalid_argument("matrix size mismatch");
    ZVec y(A.rows, Z(0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

ZVec mul_row(const ZVec& x, const ZMat& A) {
    if (A.rows != static_cast<int>(x.size())) throw std::invalid_argument("matrix size mismatch");
    ZVec y(A.cols, Z(0));
    for (int i = 0; i < A.rows; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < A.cols; ++j) y[j] += x[i] * A.at(i, j);
    }
    return y;
}

ZMat transpose(const ZMat& A) {
    ZMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

ZMat neg(const ZMat& A) {
    ZMat B = A;
    for (Z& x : B.a) x = -x;
    return B;
}

ZMat add(const ZMat& A, const ZMat& B) {
    ZMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

ZMat sub(const ZMat& A, const ZMat& B) {
    ZMat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

bool is_zero(const ZMat& A) {
    for (const Z& x : A.a)
        if (x != 0) return false;
    return true;
}

Z dot(const ZVec& x, const ZVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    Z s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

ZVec add(const ZVec& x, const ZVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    ZVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

ZVec sub(const ZVec& x, const ZVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vector size mismatch");
    ZVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

ZVec scale(const Z& c, const ZVec& x) {
    ZVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
    return z;
}

bool is_zero(const ZVec& x) {
    for (const Z& v : x)
        if (v != 0) return false;
    return true;
}

ZVec primitive_dir(const ZVec& v) {
    Z g = content(v);
    if (g == 0) throw std::invalid_argument("zero vector has no primitive part");
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

ZVec primitive_part(const ZVec& v) {
    Z g = content(v);
    if (g == 0) throw std::invalid_argument("zero vector has no primitive part");
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    for (const Z& x : w) {
        if (x > 0) break;
        if (x < 0) {
            for (Z& y : w) y = -y;
            break;
        }
    }
    return w;
}

bool lex_less(const ZVec& x, const ZVec& y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] != y[i]) return x[i] < y[i];
    }
    return x.size() < y.size();
}

Z det(const ZMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = A.rows;
    if (n == 0) return 1;
    ZMat M = A;
    int sign = 1;
    Z prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (M.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (M.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Z t = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
                mpz_divexact(M.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M.at(k, k);
    }
    return sign > 0 ? M.at(n - 1, n - 1) : Z(-M.at(n - 1, n - 1));
}

namespace {

int cmp_abs(const Z& a, const Z& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row/column helpers for the Smith reduction, keeping the transforms in sync.
struct SmithWork {
    ZMat D, U, V, Vinv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < D.cols; ++c) std::swap(D.at(i, c), D.at(j, c));
        for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
    }
    void row_addmul(int i, int j, const Z& q) {  // row_i -= q * row_j
        if (q == 0) return;
        for (int c = 0; c < D.cols; ++c) D.at(i, c) -= q * D.at(j, c);
        for (int c = 0; c < U.cols; ++c) U.at(i, c) -= q * U.at(j, c);
    }
    void row_negate(int i) {
        for (int c = 0; c < D.cols; ++c) D.at(i, c) = -D.at(i, c);
        for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < D.rows; ++r) std::swap(D.at(r, i), D.at(r, j));
        for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
        for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    void col_addmul(int i, int j, const Z& q) {  // col_i -= q * col_j
        if (q == 0) return;
        for (int r = 0; r < D.rows; ++r) D.at(r, i) -= q * D.at(r, j);
        for (int r = 0; r < V.rows; ++r) V.at(r, i) -= q * V.at(r, j);
        // (V E)^{-1}: row_j of Vinv gains q * row_i.
        for (int c = 0; c < Vinv.cols; ++c) Vinv.at(j, c) += q * Vinv.at(i, c);
    }
};

}  // namespace

Smith smith(const ZMat& A) {
    SmithWork w;
    w.D = A;
    w.U = ZMat::identity(A.rows);
    w.V = ZMat::identity(A.cols);
    w.Vinv = ZMat::identity(A.cols);
    int n = std::min(A.rows, A.cols);
    int t = 0;
    while (t < n) {
        // Locate the smallest nonzero entry of the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < A.rows; ++i)
            for (int j = t; j < A.cols; ++j) {
                const Z& x = w.D.at(i, j);
                if (x == 0) continue;
                if (pi < 0 || cmp_abs(x, w.D.at(pi, pj)) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        bool again = false;
        // Clear column t below the pivot.
        for (int i = t + 1; i < A.rows; ++i) {
            if (w.D.at(i, t) == 0) continue;
            Z q;
            mpz_fdiv_q(q.get_mpz_t(), w.D.at(i, t).get_mpz_t(), w.D.at(t, t).get_mpz_t());
            w.row_addmul(i, t, q);
            if (w.D.at(i, t) != 0) {  // remainder became a smaller pivot candidate
                again = true;
                break;
            }
        }
        if (again) continue;
        // Clear row t to the right of the pivot.
        for (int j = t + 1; j < A.cols; ++j) {
            if (w.D.at(t, j) == 0) continue;
            Z q;
            mpz_fdiv_q(q.get_mpz_t(), w.D.at(t, j).get_mpz_t(), w.D.at(t, t).get_mpz_t());
            w.col_addmul(j, t, q);
            if (w.D.at(t, j) != 0) {
                again = true;
                break;
            }
        }
        if (again) continue;
        // Enforce the divisibility chain: the pivot must divide the whole
        // trailing block.
        Z piv = w.D.at(t, t);
        int bi = -1, bj = -1;
        for (int i = t + 1; i < A.rows && bi < 0; ++i)
            for (int j = t + 1; j < A.cols; ++j)
                if (w.D.at(i, j) % piv != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi >= 0) {
            (void)bj;
            w.row_addmul(t, bi, Z(-1));  // row_t += row_bi, reintroduces column work
            continue;
        }
        if (w.D.at(t, t) < 0) w.row_negate(t);
        ++t;
    }
    Smith s;
    s.D = w.D;
    s.U = w.U;
    s.V = w.V;
    s.Vinv = w.Vinv;
    s.rank = t;
    return s;
}

ZMat hnf_rows(const ZMat& A) {
    ZMat H = A;
    int r = 0;
    for (int j = 0; j < H.cols && r < H.rows; ++j) {
        // Euclidean reduction of column j over rows r..end.
        while (true) {
            int p = -1;
            for (int i = r; i < H.rows; ++i)
                if (H.at(i, j) != 0 && (p < 0 || cmp_abs(H.at(i, j), H.at(p, j)) < 0)) p = i;
            if (p < 0) break;
            if (p != r)
                for (int c = 0; c < H.cols; ++c) std::swap(H.at(r, c), H.at(p, c));
            bool done = true;
            for (int i = r + 1; i < H.rows; ++i) {
                if (H.at(i, j) == 0) continue;
                Z q;
                mpz_fdiv_q(q.get_mpz_t(), H.at(i, j).get_mpz_t(), H.at(r, j).get_mpz_t());
                for (int c = 0; c < H.cols; ++c) H.at(i, c) -= q * H.at(r, c);
                if (H.at(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (H.at(r, j) == 0) continue;
        if (H.at(r, j) < 0)
            for (int c = 0; c < H.cols; ++c) H.at(r, c) = -H.at(r, c);
        for (int i = 0; i < r; ++i) {
            Z q;
            mpz_fdiv_q(q.get_mpz_t(), H.at(i, j).get_mpz_t(), H.at(r, j).get_mpz_t());
            if (q != 0)
                for (int c = 0; c < H.cols; ++c) H.at(i, c) -= q * H.at(r, c);
        }
        ++r;
    }
    ZMat out(r, H.cols);
    for (int i = 0; i < r; ++i)
        for (int c = 0; c < H.cols; ++c) out.at(i, c) = H.at(i, c);
    return out;
}

ZMat kernel(const ZMat& A) {
    Smith s = smith(A);
    int dim = A.cols - s.rank;
    ZMat K(dim, A.cols);
    for (int k = 0; k < dim; ++k)
        for (int i = 0; i < A.cols; ++i) K.at(k, i) = s.V.at(i, s.rank + k);
    return hnf_rows(K);
}

bool solve(const ZMat& A, const ZVec& b, ZVec& x) {
    Smith s = smith(A);
    ZVec c = mul(s.U, b);
    ZVec y(A.cols, Z(0));
    for (int i = 0; i < A.rows; ++i) {
        if (i < s.rank) {
            const Z& d = s.D.at(i, i);
            if (c[i] % d != 0) return false;
            if (i < A.cols) y[i] = c[i] / d;
        } else if (c[i] != 0) {
            return false;
        }
    }
    x = mul(s.V, y);
    return true;
}

ZMat saturate_rows(const ZMat& B, Z* index) {
    Smith s = smith(B);
    if (s.rank != B.rows) throw std::invalid_argument("saturation needs independent rows");
    if (index) {
        *index = 1;
        for (int i = 0; i < s.rank; ++i) *index *= s.D.at(i, i);
    }
    ZMat S(B.rows, B.cols);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) S.at(i, j) = s.Vinv.at(i, j);
    return hnf_rows(S);
}

int rank_z(const ZMat& A) { return hnf_rows(A).rows; }

std::string to_string(const ZVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string to_string(const ZMat& A) {
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
