#include "k3lat/sublattice.hpp"

namespace k3lat {

Sublattice make_sublattice(const Lattice& L, const ZMat& basis_rows) {
    if (basis_rows.cols != L.rank)
        throw std::invalid_argument("sublattice basis does not live in the ambient lattice");
    if (rank_z(basis_rows) != basis_rows.rows)
        throw std::invalid_argument("sublattice basis rows are dependent");
    Sublattice S;
    S.ambient = L;
    S.basis = basis_rows;
    S.gram = mul(mul(basis_rows, L.gram), transpose(basis_rows));
    return S;
}

Lattice as_lattice(const Sublattice& S, const std::string& name) {
    if (S.rank() > 0 && det(S.gram) == 0)
        throw std::invalid_argument("sublattice carries a degenerate form");
    return make_lattice(S.gram, name);
}

Z saturation_index(const Sublattice& S) {
    Z idx;
    saturate_rows(S.basis, &idx);
    return idx;
}

bool is_primitive(const Sublattice& S) { return saturation_index(S) == 1; }

Sublattice saturate(const Sublattice& S) {
    return make_sublattice(S.ambient, saturate_rows(S.basis));
}

Sublattice orthogonal_complement(const Sublattice& S) {
    // x in the complement  <=>  (B G) x = 0; the integer kernel is saturated.
    ZMat BG = mul(S.basis, S.ambient.gram);
    ZMat K = kernel(BG);
    Sublattice C = make_sublattice(S.ambient, K);
    if (C.rank() > 0 && det(C.gram) == 0)
        throw std::invalid_argument("orthogonal complement carries a degenerate form");
    return C;
}

bool contains(const Sublattice& S, const ZVec& x, ZVec* coords) {
    ZVec c;
    if (!solve(transpose(S.basis), x, c)) return false;
    if (coords) *coords = c;
    return true;
}

QVec project_coords(const Sublattice& S, const QVec& x) {
    if (static_cast<int>(x.size()) != S.ambient.rank)
        throw std::invalid_argument("vector length mismatch");
    QMat gram_q = to_q(S.gram);
    if (S.rank() == 0) return QVec{};
    if (det(S.gram) == 0)
        throw std::invalid_argument("projection onto a degenerate sublattice");
    // Solve (B G B^T) c = B G x.
    QVec rhs = mul(to_q(mul(S.basis, S.ambient.gram)), x);
    QVec c;
    if (!solve_q(gram_q, rhs, c)) throw std::logic_error("projection solve failed");
    return c;
}

QVec project_coords(const Sublattice& S, const ZVec& x) { return project_coords(S, to_q(x)); }

QVec project(const Sublattice& S, const QVec& x) {
    QVec c = project_coords(S, x);
    QVec out(S.ambient.rank, Q(0));
    for (int i = 0; i < S.rank(); ++i)
        for (int j = 0; j < S.ambient.rank; ++j) out[j] += c[i] * Q(S.basis.at(i, j));
    return out;
}

QVec project(const Sublattice& S, const ZVec& x) { return project(S, to_q(x)); }

ZVec to_ambient(const Sublattice& S, const ZVec& c) { return mul_row(c, S.basis); }

QVec to_ambient(const Sublattice& S, const QVec& c) { return mul_row(c, to_q(S.basis)); }

GlueData glue(const Sublattice& S, const Sublattice& K) {
    if (!same_gram(S.ambient, K.ambient))
        throw std::invalid_argument("glue requires sublattices of the same ambient lattice");
    const Lattice& L = S.ambient;
    if (S.rank() + K.rank() != L.rank)
        throw std::invalid_argument("glue requires ranks summing to the ambient rank");
    if (!is_primitive(S) || !is_primitive(K))
        throw std::invalid_argument("glue requires primitive sublattices");
    // Orthogonality.
    ZMat cross = mul(mul(S.basis, L.gram), transpose(K.basis));
    if (!is_zero(cross)) throw std::invalid_argument("glue requires orthogonal sublattices");

    GlueData g;
    g.S = S;
    g.K = K;
    g.AS = discriminant_group(as_lattice(S, "S"));
    g.AK = discriminant_group(as_lattice(K, "K"));

    // H = L / (S + K) via the Smith form of the stacked basis (as columns).
    ZMat T(L.rank, L.rank);
    for (int i = 0; i < S.rank(); ++i)
        for (int j = 0; j < L.rank; ++j) T.at(j, i) = S.basis.at(i, j);
    for (int i = 0; i < K.rank(); ++i)
        for (int j = 0; j < L.rank; ++j) T.at(j, S.rank() + i) = K.basis.at(i, j);
    Smith sm = smith(T);
    if (sm.rank != L.rank) throw std::logic_error("glue stack is singular");
    QMat Uinv = inverse(to_q(sm.U));
    g.glue_order = 1;
    for (int i = 0; i < L.rank; ++i) {
        const Z& d = sm.D.at(i, i);
        if (d <= 1) continue;
        g.glue_order *= d;
        // Generator of the i-th factor: U^{-1} e_i as an ambient vector.
        ZVec w(L.rank);
        for (int r = 0; r < L.rank; ++r) {
            const Q& q = Uinv.at(r, i);
            if (q.get_den() != 1) throw std::logic_error("unimodular inverse not integral");
            w[r] = q.get_num();
        }
        QVec cs = project_coords(S, w);  // S-side dual vector, S coordinates
        QVec ck = project_coords(K, w);
        g.hs_dec.push_back(disc_decompose(g.AS, cs));
        g.hk_dec.push_back(disc_decompose(g.AK, ck));
        g.orders.push_back(d);
    }
    return g;
}

GlueData glue(const Sublattice& S) { return glue(S, orthogonal_complement(S)); }

QVec glue_dual_S(const GlueData& g, const ZVec& dec) { return disc_vector(g.AS, dec); }

QVec glue_dual_K(const GlueData& g, const ZVec& dec) { return disc_vector(g.AK, dec); }

}  // namespace k3lat
