#include "k3lat/fincke_pohst.hpp"

#include <algorithm>
#include <stdexcept>

#include "k3lat/matz.hpp"

namespace k3lat {

namespace {

// floor and ceiling of a rational (gmp keeps denominators positive)
Z floor_q(const Q& r) {
    Z out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return out;
}

Z ceil_q(const Q& r) {
    Z out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return out;
}

// an integer upper bound for sqrt(r), r >= 0: sqrt(num*den)/den <= (isqrt+1)/den
Q sqrt_upper(const Q& r) {
    Z prod = r.get_num() * r.get_den();
    Z root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    Q out(root + 1, r.get_den());
    out.canonicalize();
    return out;
}

struct Search {
    int k = 0;
    std::vector<std::vector<Q>> U;  // unit upper triangular
    std::vector<Q> D;               // positive diagonal of -A = U^T D U
    QVec shift;                     // s with A s = b
    long budget = -1;
    bool complete = true;
    std::vector<ZVec> found;
    std::vector<Z> x;

    bool spend() {
        if (budget < 0) return true;
        if (budget == 0) {
            complete = false;
            return false;
        }
        --budget;
        return true;
    }

    // choose x[i], x[i-1], ..., x[0] with remaining weight budget rem;
    // exact solutions must exhaust rem completely at level -1.
    void descend(int i, const Q& rem) {
        if (i < 0) {
            if (rem == 0) found.push_back(x);
            return;
        }
        // center of the i-th completed square given the already chosen tail
        Q w = shift[i];
        for (int j = i + 1; j < k; ++j) w += U[i][j] * (Q(x[j]) + shift[j]);
        Q radius2 = rem / D[i];
        Q hi = sqrt_upper(radius2);
        Z lo = ceil_q(-w - hi);
        Z up = floor_q(-w + hi);
        for (Z v = lo; v <= up; ++v) {
            if (!spend()) return;
            Q y = Q(v) + w;
            Q used = D[i] * y * y;
            if (used > rem) continue;
            x[i] = v;
            descend(i - 1, rem - used);
            if (!complete) return;
        }
    }
};

}  // namespace

std::vector<ZVec> enumerate_quadric(const QMat& A, const QVec& b, const Q& c, const Q& t,
                                    long node_budget, bool* complete) {
    if (A.rows != A.cols) throw std::invalid_argument("quadric matrix is not square");
    int k = A.rows;
    if ((int)b.size() != k) throw std::invalid_argument("quadric linear term has the wrong length");
    if (complete) *complete = true;
    if (k == 0) {
        std::vector<ZVec> out;
        if (c == t) out.push_back(ZVec{});
        return out;
    }

    // factor -A = U^T D U with U unit upper triangular, D positive diagonal
    Search s;
    s.k = k;
    s.budget = node_budget;
    s.U.assign(k, std::vector<Q>(k, Q(0)));
    s.D.assign(k, Q(0));
    for (int i = 0; i < k; ++i) {
        s.U[i][i] = 1;
        Q d = -A.at(i, i);
        for (int l = 0; l < i; ++l) d -= s.D[l] * s.U[l][i] * s.U[l][i];
        if (d <= 0) throw std::invalid_argument("form is not negative definite");
        s.D[i] = d;
        for (int j = i + 1; j < k; ++j) {
            Q m = -A.at(i, j);
            for (int l = 0; l < i; ++l) m -= s.D[l] * s.U[l][i] * s.U[l][j];
            s.U[i][j] = m / d;
        }
    }

    // complete the square: with A s = b the equation becomes
    //   (x+s)^T A (x+s) = t - c + b.s
    QVec shift;
    if (!solve_q(A, b, shift)) throw std::logic_error("definite form failed to invert");
    s.shift = shift;
    Q target = -(t - c + dot(b, shift));
    if (target < 0) return {};

    s.x.assign(k, Z(0));
    s.descend(k - 1, target);
    if (complete) *complete = s.complete;
    std::sort(s.found.begin(), s.found.end(), lex_less);
    return s.found;
}

std::vector<ZVec> enumerate_norm(const QMat& A, const Q& t) {
    return enumerate_quadric(A, QVec(A.rows, Q(0)), Q(0), t);
}

}  // namespace k3lat
