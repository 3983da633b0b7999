#include "k3lat/isometry.hpp"

namespace k3lat {

namespace {

Q form_q(const QMat& G, const QVec& u, const QVec& v) { return dot(u, mul(G, v)); }

void check_square(const Lattice& L, const ZMat& m) {
    if (m.rows != L.rank || m.cols != L.rank)
        throw std::invalid_argument("matrix size does not match the lattice rank");
}

// Identity and negated-identity images of generator i in decomposed form.
ZVec unit_dec(const DiscriminantGroup& A, int i, int sign) {
    ZVec e(A.invariants.size(), Z(0));
    e[i] = sign > 0 ? Z(1) : A.invariants[i] - 1;
    return e;
}

}  // namespace

bool is_isometry(const Lattice& L, const ZMat& m) {
    check_square(L, m);
    return mul(mul(transpose(m), L.gram), m) == L.gram;
}

bool is_involution(const Lattice& L, const ZMat& m) {
    check_square(L, m);
    return is_isometry(L, m) && mul(m, m) == ZMat::identity(L.rank);
}

QMat reflection_q(const QMat& gram, const QVec& v) {
    int N = gram.rows;
    Q qv = form_q(gram, v, v);
    if (qv == 0) throw std::invalid_argument("reflection in an isotropic vector");
    QVec gv = mul(gram, v);
    QMat R = QMat::identity(N);
    Q c = Q(2) / qv;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) R.at(i, j) -= c * v[i] * gv[j];
    return R;
}

std::optional<ZMat> try_reflection(const Lattice& L, const ZVec& v) {
    if (static_cast<int>(v.size()) != L.rank)
        throw std::invalid_argument("vector length does not match the lattice rank");
    if (norm(L, v) == 0) return std::nullopt;
    QMat R = reflection_q(to_q(L.gram), to_q(v));
    ZMat out;
    if (!to_z(R, out)) return std::nullopt;
    return out;
}

ZMat reflection(const Lattice& L, const ZVec& v) {
    if (norm(L, v) == 0) throw std::invalid_argument("reflection in an isotropic vector");
    auto r = try_reflection(L, v);
    if (!r) throw std::invalid_argument("reflection is not integral on the lattice");
    return *r;
}

Sublattice fixed_lattice(const Lattice& L, const ZMat& m) {
    check_square(L, m);
    ZMat A = sub(m, ZMat::identity(L.rank));
    return make_sublattice(L, kernel(A));
}

Sublattice coinvariant_lattice(const Lattice& L, const ZMat& m) {
    check_square(L, m);
    ZMat A = add(m, ZMat::identity(L.rank));
    return make_sublattice(L, kernel(A));
}

DiscAction discriminant_action(const DiscriminantGroup& A, const ZMat& m) {
    int s = static_cast<int>(A.invariants.size());
    DiscAction act;
    act.invariants = A.invariants;
    act.matrix = ZMat(s, s);
    QMat mq = to_q(m);
    for (int i = 0; i < s; ++i) {
        ZVec dec = disc_decompose(A, mul(mq, A.gens[i]));
        for (int j = 0; j < s; ++j) act.matrix.at(j, i) = dec[j];
    }
    return act;
}

bool is_stable(const Lattice& L, const ZMat& m) {
    DiscriminantGroup A = discriminant_group(L);
    DiscAction act = discriminant_action(A, m);
    int s = static_cast<int>(A.invariants.size());
    for (int i = 0; i < s; ++i) {
        ZVec e = unit_dec(A, i, +1);
        for (int j = 0; j < s; ++j)
            if (act.matrix.at(j, i) != e[j]) return false;
    }
    return true;
}

bool is_disc_pm(const Lattice& L, const ZMat& m) {
    DiscriminantGroup A = discriminant_group(L);
    DiscAction act = discriminant_action(A, m);
    int s = static_cast<int>(A.invariants.size());
    for (int sign : {+1, -1}) {
        bool ok = true;
        for (int i = 0; i < s && ok; ++i) {
            ZVec e = unit_dec(A, i, sign);
            for (int j = 0; j < s; ++j)
                if (act.matrix.at(j, i) != e[j]) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

// --- Cartan-Dieudonne over Q ------------------------------------------------

namespace {

// An anisotropic vector moved by sigma, inside the row span of `rows`.
// Exists whenever sigma is not the identity on that (nondegenerate) span.
QVec pick_pivot(const QMat& G, const QMat& sigma, const std::vector<QVec>& rows,
                const std::vector<bool>& moved) {
    auto qn = [&](const QVec& v) { return form_q(G, v, v); };
    int k = static_cast<int>(rows.size());
    for (int i = 0; i < k; ++i)
        if (moved[i] && qn(rows[i]) != 0) return rows[i];
    // An anisotropic vector of the span: a basis row or a sum of two.
    QVec y;
    bool have = false;
    for (int i = 0; i < k && !have; ++i)
        if (qn(rows[i]) != 0) { y = rows[i]; have = true; }
    for (int i = 0; i < k && !have; ++i)
        for (int j = i + 1; j < k && !have; ++j) {
            QVec s = add(rows[i], rows[j]);
            if (qn(s) != 0) { y = s; have = true; }
        }
    if (!have) throw std::logic_error("degenerate subspace in Cartan-Dieudonne");
    if (mul(sigma, y) != y) return y;
    // y is fixed; perturb a moved row by multiples of y.  q(b+ty) is a
    // nonzero quadratic in t, so one of three magnitudes works.
    int bi = -1;
    for (int i = 0; i < k; ++i)
        if (moved[i]) { bi = i; break; }
    for (int t : {1, -1, 2, -2, 3, -3}) {
        QVec x = add(rows[bi], scale(Q(t), y));
        if (qn(x) != 0) return x;
    }
    throw std::logic_error("pivot search failed in Cartan-Dieudonne");
}

}  // namespace

std::vector<QVec> cartan_dieudonne(const QMat& gram, const QMat& m) {
    int N = gram.rows;
    std::vector<QVec> refl;
    QMat sigma = m;
    QMat span = QMat::identity(N);  // rows = basis of the invariant subspace
    while (span.rows > 0) {
        std::vector<QVec> rows(span.rows);
        std::vector<bool> moved(span.rows);
        bool any = false;
        for (int i = 0; i < span.rows; ++i) {
            rows[i] = span.row(i);
            moved[i] = mul(sigma, rows[i]) != rows[i];
            any = any || moved[i];
        }
        if (!any) break;
        QVec x = pick_pivot(gram, sigma, rows, moved);
        QVec sx = mul(sigma, x);
        QVec w = sub(sx, x);
        if (form_q(gram, w, w) != 0) {
            refl.push_back(w);
            sigma = mul(reflection_q(gram, w), sigma);
        } else {
            // Isotropic difference: r_x r_{sx+x} maps sx back to x.
            QVec u = add(sx, x);
            refl.push_back(u);
            refl.push_back(x);
            sigma = mul(reflection_q(gram, x), mul(reflection_q(gram, u), sigma));
        }
        // Restrict to the orthogonal of x inside the span.
        QMat fr(1, span.rows);
        for (int i = 0; i < span.rows; ++i) fr.at(0, i) = form_q(gram, rows[i], x);
        span = mul(kernel_q(fr), span);
    }
    return refl;
}

int spinor_norm_reflect(const Lattice& L, const ZMat& m) {
    if (!is_isometry(L, m)) throw std::invalid_argument("matrix is not an isometry");
    QMat G = to_q(L.gram);
    std::vector<QVec> refl = cartan_dieudonne(G, to_q(m));
    int s = 1;
    for (const QVec& v : refl)
        if (form_q(G, v, v) > 0) s = -s;
    return s;
}

int spinor_norm_orient(const Lattice& L, const ZMat& m) {
    if (!is_isometry(L, m)) throw std::invalid_argument("matrix is not an isometry");
    QMat G = to_q(L.gram);
    QVec diag;
    QMat P = diagonalize_sym(G, diag);
    std::vector<int> pos;
    for (int j = 0; j < L.rank; ++j)
        if (diag[j] > 0) pos.push_back(j);
    int p = static_cast<int>(pos.size());
    if (p == 0) return 1;
    QMat Bp(L.rank, p);
    for (int i = 0; i < L.rank; ++i)
        for (int j = 0; j < p; ++j) Bp.at(i, j) = P.at(i, pos[j]);
    QMat BtG = mul(transpose(Bp), G);
    Q d1 = det_q(mul(BtG, Bp));
    Q d2 = det_q(mul(BtG, mul(to_q(m), Bp)));
    int s1 = sgn(d1) > 0 ? 1 : -1;
    int s2 = sgn(d2) > 0 ? 1 : -1;
    if (d2 == 0) throw std::logic_error("degenerate pairing of positive subspaces");
    return s1 * s2;
}

int real_spinor_norm(const Lattice& L, const ZMat& m) { return spinor_norm_orient(L, m); }

bool in_O_plus(const Lattice& L, const ZMat& m) { return real_spinor_norm(L, m) == 1; }

bool in_monodromy(const Lattice& L, const ZMat& m, int n) {
    if (n < 2) throw std::invalid_argument("monodromy lattice needs n >= 2");
    Lattice Ln = lattice_Ln(n);
    if (!same_gram(L, Ln))
        throw std::invalid_argument("lattice does not carry the standard rank-23 Gram for this n");
    if (!is_isometry(L, m)) throw std::invalid_argument("matrix is not an isometry");
    return in_O_plus(L, m) && is_disc_pm(L, m);
}

std::optional<ZMat> involution_from_sublattice(const Sublattice& M) {
    if (!is_primitive(M)) throw std::invalid_argument("invariant sublattice must be primitive");
    if (M.rank() == 0 || det(M.gram) == 0)
        throw std::invalid_argument("invariant sublattice must be nondegenerate");
    int N = M.ambient.rank;
    // 2P - id with P the orthogonal projection onto the span of M.
    QMat Bs = to_q(M.basis);
    QMat Cs = mul(inverse(to_q(M.gram)), mul(Bs, to_q(M.ambient.gram)));
    QMat P = mul(transpose(Bs), Cs);
    QMat I2 = sub(scale(Q(2), P), QMat::identity(N));
    ZMat out;
    if (!to_z(I2, out)) return std::nullopt;
    return out;
}

AdmissibleReport is_admissible(const Sublattice& M, int n) {
    AdmissibleReport rep;
    rep.primitive = is_primitive(M);
    if (!rep.primitive) {
        rep.failed_clause = "sublattice is not primitive";
        return rep;
    }
    Inertia in = signature_q(to_q(M.gram));
    rep.hyperbolic = (in.zero == 0 && in.pos == 1 && in.neg == M.rank() - 1);
    if (!rep.hyperbolic) {
        rep.failed_clause = "sublattice is not hyperbolic";
        return rep;
    }
    rep.involution = involution_from_sublattice(M);
    rep.integral = rep.involution.has_value();
    if (!rep.integral) {
        rep.failed_clause = "split involution is not integral";
        return rep;
    }
    rep.monodromy = in_monodromy(M.ambient, *rep.involution, n);
    if (!rep.monodromy) {
        rep.failed_clause = "involution is not a monodromy operator";
        return rep;
    }
    rep.admissible = true;
    return rep;
}

// --- extension across the glue group ---------------------------------------

QMat glued_rational_matrix(const GlueData& g, const ZMat& phi, const ZMat& psi) {
    const Lattice& L = g.S.ambient;
    QMat G = to_q(L.gram);
    QMat Bs = to_q(g.S.basis), Bk = to_q(g.K.basis);
    QMat Cs = mul(inverse(to_q(g.S.gram)), mul(Bs, G));
    QMat Ck = mul(inverse(to_q(g.K.gram)), mul(Bk, G));
    QMat X = add(mul(transpose(Bs), mul(to_q(phi), Cs)),
                 mul(transpose(Bk), mul(to_q(psi), Ck)));
    return X;
}

ExtendResult extend_isometry(const GlueData& g, const ZMat& phi, const ZMat& psi) {
    if (!is_isometry(g.AS.L, phi))
        throw std::invalid_argument("phi is not an isometry of the sublattice");
    if (!is_isometry(g.AK.L, psi))
        throw std::invalid_argument("psi is not an isometry of the complement");
    ExtendResult res;
    QMat phi_q = to_q(phi), psi_q = to_q(psi);
    int t = static_cast<int>(g.orders.size());
    for (int i = 0; i < t; ++i) {
        // Image of the S-side class under phi-bar.
        QVec a = disc_vector(g.AS, g.hs_dec[i]);
        ZVec phia = disc_decompose(g.AS, mul(phi_q, a));
        // It must stay inside the glue subgroup of A_S.
        ZVec coeff;
        if (!subgroup_solve(g.AS, g.hs_dec, phia, coeff)) {
            res.certificate.reason = "image_escapes_glue";
            res.certificate.generator = i;
            res.certificate.actual = phia;
            return res;
        }
        // gamma carries it to sum coeff_j * (K-side class j).
        int s = static_cast<int>(g.AK.invariants.size());
        ZVec required(s, Z(0));
        for (int j = 0; j < t; ++j)
            for (int c = 0; c < s; ++c) required[c] += coeff[j] * g.hk_dec[j][c];
        for (int c = 0; c < s; ++c) {
            mpz_fdiv_r(required[c].get_mpz_t(), required[c].get_mpz_t(),
                       g.AK.invariants[c].get_mpz_t());
        }
        QVec b = disc_vector(g.AK, g.hk_dec[i]);
        ZVec actual = disc_decompose(g.AK, mul(psi_q, b));
        if (actual != required) {
            res.certificate.reason = "psi_mismatch";
            res.certificate.generator = i;
            res.certificate.required = required;
            res.certificate.actual = actual;
            return res;
        }
    }
    QMat X = glued_rational_matrix(g, phi, psi);
    ZMat Xi;
    if (!to_z(X, Xi)) throw std::logic_error("glue-compatible extension failed integrality");
    if (!is_isometry(g.S.ambient, Xi)) throw std::logic_error("glued matrix is not an isometry");
    res.exists = true;
    res.matrix = Xi;
    return res;
}

ZMat extend_stable(const Sublattice& S, const ZMat& sigma) {
    Lattice Ls = as_lattice(S, "S");
    if (!is_isometry(Ls, sigma)) throw std::invalid_argument("sigma is not an isometry");
    if (!is_stable(Ls, sigma)) throw std::invalid_argument("sigma is not stable");
    GlueData g = glue(S);
    ExtendResult r = extend_isometry(g, sigma, ZMat::identity(g.K.rank()));
    if (!r.exists) throw std::logic_error("stable isometry failed to extend");
    return r.matrix;
}

std::pair<ZVec, ZVec> gamma_representatives(const Lattice& L, const ZVec& delta,
                                            const ZMat& iota) {
    if (!is_involution(L, iota)) throw std::invalid_argument("iota is not an involution");
    ZVec im = mul(iota, delta);
    return {add(delta, im), sub(delta, im)};
}

}  // namespace k3lat
