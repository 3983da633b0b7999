#pragma once

// shared random generators and independent oracles for the test suite
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "k3lat/isometry.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matq.hpp"
#include "k3lat/matz.hpp"
#include "k3lat/sublattice.hpp"

namespace testutil {

using namespace k3lat;

inline long rand_long(std::mt19937& g, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(g);
}

inline ZVec rand_vec(std::mt19937& g, int len, long lo, long hi) {
    ZVec v(len);
    for (int i = 0; i < len; ++i) v[i] = rand_long(g, lo, hi);
    return v;
}

// determinant by rational Gaussian elimination with partial pivoting;
// an algorithm independent of the fraction-free one in the library
inline Q det_elimination(const ZMat& A) {
    int n = A.rows;
    std::vector<std::vector<Q>> m(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Q(A.at(i, j));
    Q det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Q(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            Q f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// signature by the sign sequence of leading principal minors (Jacobi);
// retries with random unimodular congruences until all minors are nonzero
inline std::pair<int, int> signature_minors(const ZMat& gram, std::mt19937& g) {
    int n = gram.rows;
    ZMat G = gram;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Q> minors{Q(1)};
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k) {
            ZMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub.at(i, j) = G.at(i, j);
            Q d = det_elimination(sub);
            if (d == 0) ok = false;
            minors.push_back(d);
        }
        if (ok) {
            int pos = 0, neg = 0;
            for (int k = 1; k <= n; ++k) {
                if (minors[k] * minors[k - 1] > 0)
                    ++pos;
                else
                    ++neg;
            }
            return {pos, neg};
        }
        // random congruence: add a multiple of one row/column to another
        int i = (int)rand_long(g, 0, n - 1), j = (int)rand_long(g, 0, n - 1);
        if (i == j) continue;
        Z c = rand_long(g, -2, 2);
        ZMat T = ZMat::identity(n);
        T.at(i, j) = c;
        G = mul(mul(transpose(T), G), T);
    }
    throw std::runtime_error("signature oracle failed to find nonzero minors");
}

// random primitive sublattice of L with the requested rank and, optionally,
// the requested signature of its Gram form
inline std::optional<Sublattice> random_primitive_sublattice(
    std::mt19937& g, const Lattice& L, int r,
    std::optional<std::pair<int, int>> want_sig = std::nullopt, int tries = 500) {
    for (int t = 0; t < tries; ++t) {
        ZMat B(r, L.rank);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < L.rank; ++j)
                B.at(i, j) = rand_long(g, 0, 5) == 0 ? rand_long(g, -2, 2) : 0;
        if (rank_z(B) < r) continue;
        Sublattice raw = make_sublattice(L, hnf_rows(saturate_rows(B)));
        Inertia in = signature_q(to_q(raw.gram));
        if (in.zero != 0) continue;
        if (want_sig && !(in.pos == want_sig->first && in.neg == want_sig->second)) continue;
        return raw;
    }
    return std::nullopt;
}

// random even lattice from standard blocks, then a unimodular change of basis
inline Lattice random_block(std::mt19937& g) {
    if (rand_long(g, 0, 1) == 0) return lattice_U();
    long k = 2 * rand_long(g, 1, 3);
    if (rand_long(g, 0, 1) == 0) k = -k;
    return lattice_span(Z(k));
}

inline Lattice random_block_lattice(std::mt19937& g, int max_rank) {
    Lattice L = random_block(g);
    while (L.rank < max_rank && rand_long(g, 0, 2) > 0) {
        Lattice next = random_block(g);
        if (L.rank + next.rank > max_rank) break;
        L = direct_sum(L, next);
    }
    // conjugate by a random unimodular matrix built from shear steps
    ZMat T = ZMat::identity(L.rank);
    for (int s = 0; s < 2 * L.rank; ++s) {
        int i = (int)rand_long(g, 0, L.rank - 1), j = (int)rand_long(g, 0, L.rank - 1);
        if (i == j) continue;
        ZMat E = ZMat::identity(L.rank);
        E.at(i, j) = rand_long(g, -1, 1);
        T = mul(T, E);
    }
    return make_lattice(mul(mul(transpose(T), L.gram), T));
}

// random isometry as a product of at most max_refl integral reflections
inline std::optional<ZMat> random_reflection_product(std::mt19937& g, const Lattice& L,
                                                     int max_refl) {
    ZMat m = ZMat::identity(L.rank);
    int want = (int)rand_long(g, 1, max_refl);
    int got = 0;
    for (int t = 0; t < 200 && got < want; ++t) {
        ZVec v = rand_vec(g, L.rank, -2, 2);
        if (is_zero(v)) continue;
        std::optional<ZMat> r = try_reflection(L, v);
        if (!r) continue;
        m = mul(m, *r);
        ++got;
    }
    if (got == 0) return std::nullopt;
    return m;
}

// random vector of the given norm found by small-box rejection
inline std::optional<ZVec> random_vector_of_norm(std::mt19937& g, const Lattice& L, const Z& N,
                                                 int tries = 2000) {
    for (int t = 0; t < tries; ++t) {
        ZVec v = rand_vec(g, L.rank, -2, 2);
        if (is_zero(v)) continue;
        if (norm(L, v) == N) return v;
    }
    return std::nullopt;
}

// random vector of a prescribed even norm, for lattices whose first two
// coordinates form a hyperbolic pair: randomize the tail, pin the second
// coordinate to one, then solve for the first coordinate
inline ZVec random_norm_via_hyperbolic(std::mt19937& g, const Lattice& L, const Z& target) {
    const int n = L.gram.rows;
    if (n < 2 || L.gram.at(0, 0) != 0 || L.gram.at(0, 1) != 1)
        throw std::logic_error("lattice does not start with a hyperbolic pair");
    for (int j = 2; j < n; ++j)
        if (L.gram.at(0, j) != 0) throw std::logic_error("hyperbolic pair is not split off");
    ZVec x(n, 0);
    for (int i = 2; i < n; ++i) x[i] = rand_long(g, -2, 2);
    x[1] = 1;
    Z cur = norm(L, x);
    x[0] = (target - cur) / 2;
    return x;
}

}  // namespace testutil
