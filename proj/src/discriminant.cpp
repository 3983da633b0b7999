#include "k3lat/discriminant.hpp"

namespace k3lat {

namespace {

Q mod_interval(const Q& x, const Z& period) {
    // Canonical representative of x mod period*Z in [0, period).
    Q p(period);
    Q d = x / p;
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), d.get_num_mpz_t(), d.get_den_mpz_t());
    return x - Q(fl) * p;
}

}  // namespace

QVec reduce_mod_one(const QVec& w) {
    QVec r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = mod_interval(w[i], Z(1));
    return r;
}

DiscriminantGroup discriminant_group(const Lattice& L) {
    DiscriminantGroup A;
    A.L = L;
    Smith s = smith(L.gram);
    A.snf_U = s.U;
    A.snf_diag.assign(L.rank, Z(0));
    for (int i = 0; i < L.rank; ++i) A.snf_diag[i] = s.D.at(i, i);
    A.order = 1;
    for (int i = 0; i < L.rank; ++i) {
        const Z& d = A.snf_diag[i];
        if (d > 1) {
            A.gen_pos.push_back(i);
            A.invariants.push_back(d);
            A.order *= d;
            // Generator: column i of V divided by d_i.
            QVec g(L.rank);
            for (int r = 0; r < L.rank; ++r) g[r] = Q(s.V.at(r, i)) / Q(d);
            A.gens.push_back(reduce_mod_one(g));
        }
    }
    int k = static_cast<int>(A.gens.size());
    A.qvals.assign(k, Q(0));
    A.pairing = QMat(k, k);
    for (int i = 0; i < k; ++i) {
        A.qvals[i] = mod_interval(norm_q(L, A.gens[i]), Z(2));
        for (int j = 0; j < k; ++j)
            A.pairing.at(i, j) = mod_interval(inner_q(L, A.gens[i], A.gens[j]), Z(1));
    }
    return A;
}

bool in_dual(const Lattice& L, const QVec& w) {
    QVec gw = mul(to_q(L.gram), w);
    for (const Q& x : gw)
        if (x.get_den() != 1) return false;
    return true;
}

ZVec disc_decompose(const DiscriminantGroup& A, const QVec& w) {
    QVec gw = mul(to_q(A.L.gram), w);
    ZVec gwz;
    if (!to_z(gw, gwz)) throw std::invalid_argument("vector is not in the dual lattice");
    ZVec t = mul(A.snf_U, gwz);
    ZVec out(A.gen_pos.size(), Z(0));
    for (std::size_t i = 0; i < A.gen_pos.size(); ++i) {
        const Z& d = A.snf_diag[A.gen_pos[i]];
        Z r;
        mpz_fdiv_r(r.get_mpz_t(), t[A.gen_pos[i]].get_mpz_t(), d.get_mpz_t());
        out[i] = r;
    }
    return out;
}

QVec disc_vector(const DiscriminantGroup& A, const ZVec& coeffs) {
    if (coeffs.size() != A.gens.size()) throw std::invalid_argument("coefficient count mismatch");
    QVec v(A.L.rank, Q(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) v = add(v, scale(Q(coeffs[i]), A.gens[i]));
    return reduce_mod_one(v);
}

Q disc_q(const DiscriminantGroup& A, const QVec& w) { return mod_interval(norm_q(A.L, w), Z(2)); }

Q disc_pairing(const DiscriminantGroup& A, const QVec& v, const QVec& w) {
    return mod_interval(inner_q(A.L, v, w), Z(1));
}

bool subgroup_solve(const DiscriminantGroup& A, const std::vector<ZVec>& gens_dec, const ZVec& t,
                    ZVec& coeffs) {
    int k = static_cast<int>(A.invariants.size());
    int m = static_cast<int>(gens_dec.size());
    // Solve sum_j x_j * gens_dec[j] == t modulo the invariant factors: an
    // integer system with one relation column d_i e_i per factor.
    ZMat M(k, m + k);
    for (int j = 0; j < m; ++j) {
        if (static_cast<int>(gens_dec[j].size()) != k)
            throw std::invalid_argument("decomposition length mismatch");
        for (int i = 0; i < k; ++i) M.at(i, j) = gens_dec[j][i];
    }
    for (int i = 0; i < k; ++i) M.at(i, m + i) = A.invariants[i];
    ZVec x;
    if (!solve(M, t, x)) return false;
    coeffs.assign(x.begin(), x.begin() + m);
    return true;
}

}  // namespace k3lat
