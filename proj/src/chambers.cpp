#include "k3lat/chambers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "k3lat/fincke_pohst.hpp"

namespace k3lat {

namespace {

bool first_nonzero_positive(const ZVec& v) {
    for (const Z& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

ZVec lex_canon(const ZVec& v) {
    if (first_nonzero_positive(v)) return v;
    return scale(Z(-1), v);
}

std::string vec_key(const ZVec& v) {
    std::string out;
    for (const Z& x : v) {
        out += x.get_str();
        out += ',';
    }
    return out;
}

std::string mat_key(const ZMat& m) {
    std::string out;
    for (const Z& x : m.a) {
        out += x.get_str();
        out += ',';
    }
    return out;
}

ZMat stack_rows(int dim, const std::vector<ZVec>& rows) {
    ZMat A(rows.size(), dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim; ++j) A.at(i, j) = rows[i][j];
    return A;
}

Z form(const ZMat& G, const ZVec& u, const ZVec& v) { return dot(u, mul(G, v)); }

// is a root's reflection integral on the lattice it lives in?
bool reflective_on(const Lattice& LM, const ZVec& delta) {
    Z N = norm(LM, delta);
    Z twodiv = 2 * divisibility(LM, delta);
    return twodiv % (-N) == 0;
}

// candidates at a fixed level of the base functional, lexicographically sorted
std::vector<ZVec> level_candidates(const ZMat& G, const ZVec& base, const Z& level, const Z& N) {
    int r = G.rows;
    ZVec gb = mul(G, base);
    ZMat F(1, r);
    for (int j = 0; j < r; ++j) F.at(0, j) = gb[j];
    ZVec x0(r, Z(0));
    if (level != 0) {
        ZVec rhs{level};
        if (!solve(F, rhs, x0)) return {};
    }
    ZMat B = kernel(F);
    ZMat A = mul(mul(B, G), transpose(B));
    QVec bq = to_q(mul(mul(B, G), x0));
    Q c0 = Q(dot(x0, mul(G, x0)));
    std::vector<ZVec> out;
    for (const ZVec& s : enumerate_quadric(to_q(A), bq, c0, Q(N))) out.push_back(add(x0, mul_row(s, B)));
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

struct RootFilter {
    const Lattice* LM = nullptr;        // abstract copy of M
    const Sublattice* M = nullptr;      // for ambient divisibility
    Z ambient_div = 0;                  // 0 = unconstrained
    bool pass(const ZVec& delta) const {
        if (is_zero(delta) || content(delta) != 1) return false;
        if (!reflective_on(*LM, delta)) return false;
        if (ambient_div != 0 && divisibility(M->ambient, to_ambient(*M, delta)) != ambient_div)
            return false;
        return true;
    }
};

// accepted roots are pairwise non-obtuse toward the domain
bool compatible(const ZMat& G, const std::vector<ZVec>& accepted, const ZVec& delta) {
    for (const ZVec& a : accepted)
        if (form(G, delta, a) < 0) return false;
    return true;
}

// level-0 positives that are not sums of two positives
std::vector<ZVec> simple_level0(const std::vector<ZVec>& positives) {
    std::set<std::string> keys;
    for (const ZVec& v : positives) keys.insert(vec_key(v));
    std::vector<ZVec> out;
    for (const ZVec& v : positives) {
        bool is_sum = false;
        for (const ZVec& a : positives) {
            ZVec b = sub(v, a);
            if (is_zero(b)) continue;
            if (keys.count(vec_key(b))) {
                is_sum = true;
                break;
            }
        }
        if (!is_sum) out.push_back(v);
    }
    return out;
}

struct FiniteVolume {
    bool ok = false;
    Cone cone;
};

FiniteVolume try_finite_volume(const ZMat& G, const std::vector<ZVec>& accepted,
                               const ZVec& base) {
    FiniteVolume res;
    int r = G.rows;
    if (accepted.empty()) return res;
    std::vector<ZVec> normals;
    for (const ZVec& d : accepted) normals.push_back(mul(G, d));
    if (rank_z(stack_rows(r, normals)) < r) return res;
    Cone C = cone_from_halfspaces(r, normals);
    if (C.rays.empty()) return res;
    for (const ZVec& ray : C.rays) {
        if (form(G, ray, ray) < 0) return res;
        if (form(G, ray, base) <= 0) return res;
    }
    for (size_t i = 0; i < C.rays.size(); ++i)
        for (size_t j = i + 1; j < C.rays.size(); ++j)
            if (form(G, C.rays[i], C.rays[j]) < 0) return res;
    res.ok = true;
    res.cone = C;
    return res;
}

void finish_polyhedron(Polyhedron& P, const Cone& C, const std::vector<ZVec>& accepted) {
    P.cone = C;
    P.vertices = C.rays;
    P.roots = accepted;
    P.facets.clear();
    for (const ZVec& d : accepted)
        if (is_facet(C, mul(P.M.gram, d))) P.facets.push_back(d);
}

// residues attainable by the quadratic form modulo 8
bool excludes_all_mod8(const ZMat& G, const WallSpec& spec) {
    int r = G.rows;
    if (r > 6) return false;
    std::set<long> attain;
    std::vector<long> x(r, 0);
    while (true) {
        Z val = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) val += G.at(i, j) * x[i] * x[j];
        Z m8;
        mpz_fdiv_r_ui(m8.get_mpz_t(), val.get_mpz_t(), 8);
        attain.insert(m8.get_si());
        int i = 0;
        while (i < r && x[i] == 7) x[i++] = 0;
        if (i == r) break;
        ++x[i];
    }
    for (const auto& [N, d] : spec.allowed) {
        Z m8;
        mpz_fdiv_r_ui(m8.get_mpz_t(), N.get_mpz_t(), 8);
        if (attain.count(m8.get_si())) return false;
    }
    return true;
}

struct WeightedLevel {
    Q weight;
    Z k;
    Z absN;
    size_t pair_idx;
    bool operator<(const WeightedLevel& o) const {
        if (weight != o.weight) return weight > o.weight;  // min-heap
        if (k != o.k) return k > o.k;
        if (absN != o.absN) return absN > o.absN;
        return pair_idx > o.pair_idx;
    }
};

}  // namespace

ZVec default_base(const ZMat& gram) {
    int r = gram.rows;
    for (int i = 0; i < r; ++i)
        if (gram.at(i, i) > 0) {
            ZVec v(r, Z(0));
            v[i] = 1;
            return v;
        }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int si = 1; si >= -1; si -= 2)
                for (int a = 1; a <= 2; ++a)
                    for (int b = 1; b <= 2; ++b) {
                        ZVec v(r, Z(0));
                        v[i] = a;
                        v[j] = si * b;
                        if (dot(v, mul(gram, v)) > 0) return v;
                    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k)
                for (int si = 1; si >= -1; si -= 2)
                    for (int sj = 1; sj >= -1; sj -= 2) {
                        ZVec v(r, Z(0));
                        v[i] = 1;
                        v[j] = si;
                        v[k] = sj;
                        if (dot(v, mul(gram, v)) > 0) return v;
                    }
    throw std::invalid_argument("no small positive-norm base point found; supply one");
}

Polyhedron vinberg_domain(const Sublattice& M, const WallSpec& root_norms, const ZVec& base,
                          int level_budget) {
    int r = M.rank();
    const ZMat& G = M.gram;
    Polyhedron P;
    P.M = M;
    if (root_norms.allowed.empty()) throw std::invalid_argument("empty root spec");
    Inertia in = signature_q(to_q(G));
    if (!(in.pos == 1 && in.zero == 0 && in.neg == r - 1))
        throw std::invalid_argument("vinberg domain requires a hyperbolic sublattice");
    if ((int)base.size() != r) throw std::invalid_argument("base point length mismatch");
    if (dot(base, mul(G, base)) <= 0)
        throw std::invalid_argument("base point must have positive norm");
    for (const auto& [N, d] : root_norms.allowed) {
        if (N >= 0) throw std::invalid_argument("root norms must be negative");
        Z cap = d == 0 ? Z(2) : Z(2) * d;
        if (cap % (-N) != 0) throw std::invalid_argument("non-reflective norm in root spec");
    }
    Lattice LM = make_lattice(G);
    RootFilter rf;
    rf.LM = &LM;
    rf.M = &M;

    // complete route in rank 2 with rational cone boundary
    if (r == 2) {
        Z a2 = G.at(0, 0), b2 = G.at(0, 1), c2 = G.at(1, 1);
        Z disc = b2 * b2 - a2 * c2;
        if (mpz_perfect_square_p(disc.get_mpz_t())) {
            Z s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            ZVec v1(2), v2(2);
            if (a2 == 0) {
                v1 = ZVec{Z(1), Z(0)};
                v2 = is_zero(ZVec{c2, 2 * b2}) ? ZVec{Z(0), Z(1)}
                                               : primitive_dir(ZVec{-c2, 2 * b2});
            } else {
                v1 = primitive_dir(ZVec{-b2 + s, a2});
                v2 = primitive_dir(ZVec{-b2 - s, a2});
            }
            for (ZVec* v : {&v1, &v2})
                if (form(G, *v, base) < 0) *v = scale(Z(-1), *v);
            Z m = form(G, v1, v2);
            // complete root list via the divisor factorization of
            // (delta,v1)(delta,v2) = N m / 2
            std::vector<ZVec> all;
            std::set<std::string> seen;
            for (const auto& [N, d] : root_norms.allowed) {
                rf.ambient_div = d;
                Z T = N * m / 2;
                Z absT = -T;
                for (Z u = 1; u * u <= absT; ++u) {
                    if (absT % u != 0) continue;
                    for (const Z& uu : {Z(u), Z(absT / u)}) {
                        for (int su = 1; su >= -1; su -= 2) {
                            Z U = su * uu;
                            Z W = T / U;
                            ZMat S(2, 2);
                            ZVec g1 = mul(G, v1), g2 = mul(G, v2);
                            S.at(0, 0) = g1[0];
                            S.at(0, 1) = g1[1];
                            S.at(1, 0) = g2[0];
                            S.at(1, 1) = g2[1];
                            ZVec rhs{U, W}, delta;
                            if (!solve(S, rhs, delta)) continue;
                            if (form(G, delta, delta) != N) continue;
                            if (!rf.pass(delta)) continue;
                            if (seen.insert(vec_key(delta)).second) all.push_back(delta);
                        }
                    }
                }
            }
            // orientation and greedy acceptance in distance order
            std::vector<ZVec> lvl0;
            std::vector<std::pair<ZVec, Z>> outward;  // (root, level > 0)
            for (const ZVec& dta : all) {
                Z k = form(G, dta, base);
                if (k == 0) {
                    if (first_nonzero_positive(dta)) lvl0.push_back(dta);
                } else if (k > 0) {
                    outward.emplace_back(dta, k);
                }
            }
            std::vector<ZVec> accepted;
            std::vector<ZVec> simples = simple_level0(lvl0);
            std::sort(simples.begin(), simples.end(), lex_less);
            for (const ZVec& dta : simples)
                if (compatible(G, accepted, dta)) accepted.push_back(dta);
            std::sort(outward.begin(), outward.end(), [&](const auto& x, const auto& y) {
                Q wx = Q(x.second * x.second) / (-form(G, x.first, x.first));
                Q wy = Q(y.second * y.second) / (-form(G, y.first, y.first));
                if (wx != wy) return wx < wy;
                if (x.second != y.second) return x.second < y.second;
                return lex_less(x.first, y.first);
            });
            for (const auto& [dta, k] : outward)
                if (compatible(G, accepted, dta)) accepted.push_back(dta);

            Cone C = cone_from_rays(2, {v1, v2});
            for (const ZVec& dta : accepted) C = split_cone(C, mul(G, dta)).first;
            finish_polyhedron(P, C, accepted);
            P.certificate = "complete";
            return P;
        }
    }

    // residue certificate: no roots at all
    if (excludes_all_mod8(G, root_norms)) {
        P.full_cone = true;
        P.certificate = "complete";
        return P;
    }

    // incremental algorithm with the finite-volume stopping criterion
    std::vector<ZVec> accepted;
    {
        std::vector<ZVec> lvl0;
        for (const auto& [N, d] : root_norms.allowed) {
            rf.ambient_div = d;
            for (const ZVec& dta : level_candidates(G, base, Z(0), N))
                if (first_nonzero_positive(dta) && rf.pass(dta)) lvl0.push_back(dta);
        }
        std::vector<ZVec> simples = simple_level0(lvl0);
        std::sort(simples.begin(), simples.end(), lex_less);
        for (const ZVec& dta : simples)
            if (compatible(G, accepted, dta)) accepted.push_back(dta);
    }
    Z cb = content(mul(G, base));
    std::priority_queue<WeightedLevel> pq;
    for (size_t i = 0; i < root_norms.allowed.size(); ++i) {
        const Z& N = root_norms.allowed[i].first;
        pq.push({Q(cb * cb) / (-N), cb, -N, i});
    }
    int processed = 0;
    while (!pq.empty() && processed < level_budget) {
        WeightedLevel wl = pq.top();
        pq.pop();
        ++processed;
        const auto& [N, d] = root_norms.allowed[wl.pair_idx];
        rf.ambient_div = d;
        bool added = false;
        for (const ZVec& dta : level_candidates(G, base, wl.k, N)) {
            if (!rf.pass(dta)) continue;
            if (!compatible(G, accepted, dta)) continue;
            accepted.push_back(dta);
            added = true;
        }
        if (added) {
            FiniteVolume fv = try_finite_volume(G, accepted, base);
            if (fv.ok) {
                finish_polyhedron(P, fv.cone, accepted);
                P.certificate = "complete";
                return P;
            }
        }
        pq.push({Q((wl.k + cb) * (wl.k + cb)) / wl.absN, wl.k + cb, wl.absN, wl.pair_idx});
    }
    // budget exhausted: report the current cut honestly
    P.certificate = "incomplete";
    std::vector<ZVec> normals;
    for (const ZVec& dta : accepted) normals.push_back(mul(G, dta));
    if (!accepted.empty() && rank_z(stack_rows(r, normals)) == r)
        finish_polyhedron(P, cone_from_halfspaces(r, normals), accepted);
    else
        P.roots = accepted;
    return P;
}

ChamberComplex chamber_decomposition(const Polyhedron& region, const std::vector<ZVec>& walls) {
    ChamberComplex cx;
    const ZMat& G = region.M.gram;
    std::vector<ZVec> canon;
    for (const ZVec& w : walls) canon.push_back(lex_canon(w));
    std::sort(canon.begin(), canon.end(), lex_less);
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

    if (region.full_cone) {
        if (!canon.empty())
            throw std::invalid_argument("chamber decomposition requires a polyhedral region");
        Chamber ch;
        cx.chambers.push_back(ch);
        return cx;
    }
    if (region.cone.rays.empty()) throw std::invalid_argument("region has no rays");

    for (const ZVec& w : canon)
        if (meets_open(ray_signs(mul(G, w), region.cone))) cx.walls.push_back(w);

    std::vector<Chamber> cells;
    {
        Chamber base;
        base.cone = region.cone;
        cells.push_back(base);
    }
    for (const ZVec& w : cx.walls) {
        ZVec f = mul(G, w);
        std::vector<Chamber> next;
        for (Chamber& cell : cells) {
            std::vector<int> sg = ray_signs(f, cell.cone);
            if (meets_open(sg)) {
                auto [plus, minus] = split_cone(cell.cone, f);
                Chamber cp = cell, cm = cell;
                cp.cone = plus;
                cp.signs.push_back(1);
                cm.cone = minus;
                cm.signs.push_back(-1);
                next.push_back(cp);
                next.push_back(cm);
            } else {
                bool pos = false;
                for (int s : sg) pos = pos || s > 0;
                cell.signs.push_back(pos ? 1 : -1);
                next.push_back(cell);
            }
        }
        cells = next;
    }
    for (Chamber& ch : cells) {
        ch.vertices = ch.cone.rays;
        ch.witness = to_q(interior_point(ch.cone));
    }
    // canonical order: +1 before -1 at the first differing wall
    std::sort(cells.begin(), cells.end(), [](const Chamber& a, const Chamber& b) {
        for (size_t i = 0; i < a.signs.size() && i < b.signs.size(); ++i) {
            if (a.signs[i] != b.signs[i]) return a.signs[i] > b.signs[i];
        }
        return a.signs.size() < b.signs.size();
    });
    cx.chambers = cells;

    int r = region.cone.dim;
    for (size_t i = 0; i < cx.chambers.size(); ++i) {
        for (size_t j = i + 1; j < cx.chambers.size(); ++j) {
            int diff = -1;
            bool single = true;
            for (size_t w = 0; w < cx.walls.size(); ++w) {
                if (cx.chambers[i].signs[w] != cx.chambers[j].signs[w]) {
                    if (diff >= 0) {
                        single = false;
                        break;
                    }
                    diff = w;
                }
            }
            if (!single || diff < 0) continue;
            ZVec f = mul(G, cx.walls[diff]);
            if (!is_facet(cx.chambers[i].cone, f) || !is_facet(cx.chambers[j].cone, f)) continue;
            (void)r;
            cx.adjacency.push_back({(int)i, (int)j, diff});
        }
    }
    return cx;
}

std::vector<SymmetryVerdict> polyhedron_symmetries(const Polyhedron& P, int n,
                                                   const std::vector<ZMat>& extra_psi) {
    std::vector<SymmetryVerdict> out;
    const ZMat& G = P.M.gram;
    int r = P.M.rank();
    if (P.full_cone || P.vertices.empty()) {
        SymmetryVerdict id;
        id.sigma = ZMat::identity(r);
        id.verdict = "member";
        id.psi = ZMat::identity(P.M.ambient.rank - r);
        id.ambient = ZMat::identity(P.M.ambient.rank);
        out.push_back(id);
        return out;
    }
    const std::vector<ZVec>& V = P.vertices;
    int nv = V.size();
    if (rank_z(stack_rows(r, V)) < r)
        throw std::invalid_argument("polyhedron vertices do not span the sublattice");

    // pairing table and norm-compatible permutation search
    std::vector<std::vector<Z>> pg(nv, std::vector<Z>(nv));
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) pg[i][j] = form(G, V[i], V[j]);
    std::vector<int> bidx;
    {
        std::vector<ZVec> acc;
        for (int i = 0; i < nv && (int)bidx.size() < r; ++i) {
            acc.push_back(V[i]);
            if (rank_z(stack_rows(r, acc)) == (int)acc.size())
                bidx.push_back(i);
            else
                acc.pop_back();
        }
    }
    QMat X(r, r);
    for (int t = 0; t < r; ++t)
        for (int i = 0; i < r; ++i) X.at(i, t) = Q(V[bidx[t]][i]);
    QMat Xinv = inverse(X);

    std::vector<ZMat> sigmas;
    std::set<std::string> seen;
    std::vector<int> perm(nv, -1);
    std::vector<bool> used(nv, false);
    auto emit = [&](const std::vector<int>& p) {
        QMat Y(r, r);
        for (int t = 0; t < r; ++t)
            for (int i = 0; i < r; ++i) Y.at(i, t) = Q(V[p[bidx[t]]][i]);
        QMat Sq = mul(Y, Xinv);
        ZMat S;
        if (!to_z(Sq, S)) return;
        for (int i = 0; i < nv; ++i)
            if (mul(S, V[i]) != V[p[i]]) return;
        if (mul(transpose(S), mul(G, S)) != G) return;
        if (seen.insert(mat_key(S)).second) sigmas.push_back(S);
    };
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == nv) {
            emit(perm);
            return;
        }
        for (int j = 0; j < nv; ++j) {
            if (used[j]) continue;
            if (pg[j][j] != pg[depth][depth]) continue;
            bool ok = true;
            for (int k = 0; k < depth; ++k)
                if (pg[perm[k]][j] != pg[k][depth]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            perm[depth] = j;
            used[j] = true;
            self(self, depth + 1);
            used[j] = false;
        }
    };
    rec(rec, 0);
    std::sort(sigmas.begin(), sigmas.end(),
              [](const ZMat& a, const ZMat& b) { return lex_less(a.a, b.a); });

    // monodromy verdicts via glue-compatible companions on the complement
    const Lattice& L = P.M.ambient;
    GlueData g = glue(P.M);
    Lattice LK = as_lattice(g.K, "K");
    int kr = g.K.rank();
    size_t ngen = g.hs_dec.size();
    ZVec invK = g.AK.invariants;
    int sK = invK.size();

    // reflection pool on K with discriminant actions
    struct Refl {
        ZMat m;
        ZMat action;
        bool positive_norm;
    };
    std::vector<Refl> pool;
    {
        std::vector<ZVec> vecs;
        for (int i = 0; i < kr; ++i) {
            ZVec v(kr, Z(0));
            v[i] = 1;
            vecs.push_back(v);
        }
        for (int i = 0; i < kr; ++i)
            for (int j = i + 1; j < kr; ++j)
                for (int s : {1, -1}) {
                    ZVec v(kr, Z(0));
                    v[i] = 1;
                    v[j] = s;
                    vecs.push_back(v);
                }
        for (const ZVec& v : vecs) {
            Z nn = dot(v, mul(g.K.gram, v));
            if (nn == 0) continue;
            std::optional<ZMat> refl = try_reflection(LK, v);
            if (!refl) continue;
            Refl R;
            R.m = *refl;
            R.action = discriminant_action(g.AK, R.m).matrix;
            R.positive_norm = nn > 0;
            pool.push_back(R);
        }
    }
    // stable positive-norm reflection: flips the real spinor norm only
    std::optional<ZMat> flipper;
    ZMat idact = ZMat::identity(sK);
    for (const Refl& R : pool)
        if (R.positive_norm && R.action == idact) {
            flipper = R.m;
            break;
        }

    auto action_of = [&](const ZMat& psi) { return discriminant_action(g.AK, psi).matrix; };
    auto action_matches = [&](const ZMat& act, const std::vector<ZVec>& beta) {
        for (size_t i = 0; i < ngen; ++i) {
            ZVec img = mul(act, g.hk_dec[i]);
            for (int c = 0; c < sK; ++c) {
                Z red;
                mpz_fdiv_r(red.get_mpz_t(), img[c].get_mpz_t(), invK[c].get_mpz_t());
                if (red != beta[i][c]) return false;
            }
        }
        return true;
    };

    for (const ZMat& S : sigmas) {
        SymmetryVerdict v;
        v.sigma = S;
        if (S == ZMat::identity(r)) {
            v.verdict = "member";
            v.psi = ZMat::identity(kr);
            v.ambient = ZMat::identity(L.rank);
            out.push_back(v);
            continue;
        }
        // psi-independent obstruction: the induced map must preserve the glue
        QMat Sq = to_q(S);
        bool escapes = false;
        std::vector<ZVec> beta(ngen);
        for (size_t i = 0; i < ngen && !escapes; ++i) {
            QVec img = mul(Sq, glue_dual_S(g, g.hs_dec[i]));
            ZVec dec = disc_decompose(g.AS, img);
            ZVec coeff;
            if (!subgroup_solve(g.AS, g.hs_dec, dec, coeff)) {
                escapes = true;
                ExtendCertificate cert;
                cert.reason = "image_escapes_glue";
                cert.generator = i;
                cert.actual = dec;
                v.obstruction = cert;
                break;
            }
            ZVec b(sK, Z(0));
            for (size_t j = 0; j < ngen; ++j)
                for (int c = 0; c < sK; ++c) b[c] += coeff[j] * g.hk_dec[j][c];
            for (int c = 0; c < sK; ++c)
                mpz_fdiv_r(b[c].get_mpz_t(), b[c].get_mpz_t(), invK[c].get_mpz_t());
            beta[i] = b;
        }
        if (escapes) {
            v.verdict = "non_member";
            out.push_back(v);
            continue;
        }
        // companion search, cheap discriminant test first
        std::vector<ZMat> candidates;
        candidates.push_back(ZMat::identity(kr));
        candidates.push_back(neg(ZMat::identity(kr)));
        for (const ZMat& e : extra_psi)
            if (e.rows == kr && e.cols == kr && is_isometry(LK, e)) candidates.push_back(e);
        for (const Refl& R : pool) candidates.push_back(R.m);
        // products of two reflections, one representative per action pair
        {
            std::map<std::string, std::vector<int>> buckets;
            for (size_t i = 0; i < pool.size(); ++i) buckets[mat_key(pool[i].action)].push_back(i);
            for (auto& [k1, idx1] : buckets)
                for (auto& [k2, idx2] : buckets) {
                    int i1 = idx1[0];
                    int i2 = (k1 == k2) ? (idx1.size() > 1 ? idx1[1] : -1) : idx2[0];
                    if (i2 < 0) continue;
                    ZMat prod = mul(pool[i1].action, pool[i2].action);
                    if (!action_matches(prod, beta)) continue;
                    candidates.push_back(mul(pool[i1].m, pool[i2].m));
                }
        }
        bool decided = false;
        int attempts = 0;
        for (const ZMat& psi : candidates) {
            if (attempts > 200) break;
            if (!action_matches(action_of(psi), beta)) continue;
            ++attempts;
            ExtendResult er = extend_isometry(g, S, psi);
            if (!er.exists) continue;
            if (in_monodromy(L, er.matrix, n)) {
                v.verdict = "member";
                v.psi = psi;
                v.ambient = er.matrix;
                decided = true;
                break;
            }
            if (!in_O_plus(L, er.matrix) && flipper) {
                ZMat psi2 = mul(psi, *flipper);
                ExtendResult er2 = extend_isometry(g, S, psi2);
                if (er2.exists && in_monodromy(L, er2.matrix, n)) {
                    v.verdict = "member";
                    v.psi = psi2;
                    v.ambient = er2.matrix;
                    decided = true;
                    break;
                }
            }
        }
        if (!decided) v.verdict = "undecided";
        out.push_back(v);
    }
    return out;
}

ConeCount chamber_count_in_cone(const Polyhedron& P, std::size_t chambers, long group_cap) {
    ConeCount res;
    const ZMat& G = P.M.gram;
    int r = P.M.rank();
    if (P.roots.empty()) {
        res.count = Z(chambers);
        res.reason = "finite";
        res.weyl_order = Z(1);
        return res;
    }
    // W is finite exactly when the roots span a negative definite subspace
    std::vector<ZVec> indep;
    for (const ZVec& d : P.roots) {
        indep.push_back(d);
        if (rank_z(stack_rows(r, indep)) < (int)indep.size()) indep.pop_back();
    }
    int s = indep.size();
    QMat GG(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) GG.at(i, j) = Q(form(G, indep[i], indep[j]));
    Inertia in = signature_q(GG);
    if (!(in.neg == s && in.zero == 0 && in.pos == 0)) {
        res.reason = "infinite_reflection_group";
        return res;
    }
    std::vector<ZMat> gens;
    Lattice LM = make_lattice(G);
    for (const ZVec& d : P.roots) gens.push_back(reflection(LM, d));
    std::set<std::string> elems;
    std::vector<ZMat> frontier{ZMat::identity(r)};
    elems.insert(mat_key(frontier[0]));
    while (!frontier.empty()) {
        std::vector<ZMat> next;
        for (const ZMat& w : frontier)
            for (const ZMat& gmat : gens) {
                ZMat prod = mul(gmat, w);
                if ((long)elems.size() > group_cap) {
                    res.reason = "group_cap_exceeded";
                    return res;
                }
                if (elems.insert(mat_key(prod)).second) next.push_back(prod);
            }
        frontier = next;
    }
    res.weyl_order = Z(elems.size());
    res.count = Z(elems.size()) * Z(chambers);
    res.reason = "finite";
    return res;
}

OrbitCount chamber_orbits(const ChamberComplex& cx, const ZMat& gram,
                          const std::vector<SymmetryVerdict>& syms) {
    int n = cx.chambers.size();
    auto locate = [&](const QVec& w) -> int {
        for (int j = 0; j < n; ++j) {
            bool match = true;
            for (size_t t = 0; t < cx.walls.size(); ++t) {
                Q val = dot(to_q(mul(gram, cx.walls[t])), w);
                int sg = val > 0 ? 1 : (val < 0 ? -1 : 0);
                if (sg != cx.chambers[j].signs[t]) {
                    match = false;
                    break;
                }
            }
            if (match) return j;
        }
        return -1;
    };
    auto orbits = [&](bool include_undecided) -> int {
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](int x) -> int {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const SymmetryVerdict& sv : syms) {
            if (sv.verdict == "non_member") continue;
            if (sv.verdict == "undecided" && !include_undecided) continue;
            QMat Sq = to_q(sv.sigma);
            bool valid = true;
            std::vector<std::pair<int, int>> links;
            for (int i = 0; i < n && valid; ++i) {
                if (cx.chambers[i].witness.empty()) continue;
                int j = locate(mul(Sq, cx.chambers[i].witness));
                // a symmetry that does not even permute the chambers cannot be
                // a monodromy member; drop it from both bounds
                if (j < 0)
                    valid = false;
                else
                    links.emplace_back(i, j);
            }
            if (!valid) continue;
            for (auto [i, j] : links) {
                int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }
        }
        std::set<int> roots;
        for (int i = 0; i < n; ++i) roots.insert(find(i));
        return roots.size();
    };
    OrbitCount oc;
    oc.upper = orbits(false);
    oc.lower = orbits(true);
    return oc;
}

std::vector<SimpleFlag> chamber_simple_flags(const Sublattice& M, const ChamberComplex& cx,
                                             const WallSpec& spec,
                                             const std::vector<ZVec>& known_witnesses,
                                             long fp_budget) {
    const Lattice& L = M.ambient;
    GlueData g = glue(M);
    Z s = g.AS.invariants.empty() ? Z(1) : g.AS.invariants.back();
    const ZMat& GK = g.K.gram;
    int kr = g.K.rank();
    ZVec invK = g.AK.invariants;
    int sK = invK.size();
    size_t ngen = g.hs_dec.size();

    // greedy negative definite coordinate block of K for completions
    std::vector<int> block, rest;
    for (int t = 0; t < kr && (int)block.size() < 8; ++t) {
        block.push_back(t);
        int bs = block.size();
        QMat BG(bs, bs);
        for (int i = 0; i < bs; ++i)
            for (int j = 0; j < bs; ++j) BG.at(i, j) = Q(GK.at(block[i], block[j]));
        Inertia in = signature_q(BG);
        if (!(in.neg == bs && in.zero == 0 && in.pos == 0)) block.pop_back();
    }
    {
        std::set<int> inblock(block.begin(), block.end());
        for (int t = 0; t < kr; ++t)
            if (!inblock.count(t)) rest.push_back(t);
    }
    int bs = block.size();
    QMat Ablk(bs, bs);
    for (int i = 0; i < bs; ++i)
        for (int j = 0; j < bs; ++j) Ablk.at(i, j) = Q(GK.at(block[i], block[j]));
    std::vector<QVec> omegas;
    omegas.push_back(QVec(kr, Q(0)));
    for (int t : rest)
        for (int c : {1, -1, 2, -2}) {
            QVec w(kr, Q(0));
            w[t] = c;
            omegas.push_back(w);
        }

    auto crossing = [&](const ZVec& delta, const Chamber& ch) -> bool {
        if (ch.cone.rays.empty()) return true;  // full cone
        bool pos = false, negs = false;
        for (const ZVec& ray : ch.cone.rays) {
            Z val = dot(delta, mul(L.gram, to_ambient(M, ray)));
            if (val > 0) pos = true;
            if (val < 0) negs = true;
        }
        return pos && negs;
    };

    std::vector<SimpleFlag> out;
    for (const Chamber& ch : cx.chambers) {
        SimpleFlag flag;
        // preset witnesses first
        for (const ZVec& w : known_witnesses) {
            bool in_delta = false;
            try {
                in_delta = in_Delta_M(L, M, w, spec);
            } catch (const std::exception&) {
                in_delta = false;
            }
            if (in_delta && crossing(w, ch)) {
                flag.flag = "nonempty";
                flag.witness = w;
                break;
            }
        }
        if (!flag.flag.empty()) {
            out.push_back(flag);
            continue;
        }
        if (ch.cone.rays.empty()) {
            flag.flag = "undetermined";
            out.push_back(flag);
            continue;
        }
        bool all_excluded = true;
        bool found = false;
        for (const auto& [N, d] : spec.allowed) {
            if (found) break;
            Z s2N = s * s * N;
            for (Z t = -2; t > s2N && !found; t -= 2) {
                bool comp = true;
                std::vector<ZVec> ms =
                    enumerate_norm_crossing(M.gram, ch.cone, t, false, std::nullopt, &comp);
                for (const ZVec& m : ms) {
                    if (found) break;
                    // mu = m / s must lie in the dual of M
                    ZVec gm = mul(M.gram, m);
                    bool in_dual_scaled = true;
                    for (const Z& x : gm)
                        if (x % s != 0) in_dual_scaled = false;
                    if (!in_dual_scaled) continue;
                    QVec mu(m.size());
                    for (size_t i = 0; i < m.size(); ++i) {
                        mu[i] = Q(m[i], s);
                        mu[i].canonicalize();
                    }
                    ZVec dec = disc_decompose(g.AS, mu);
                    ZVec coeff;
                    if (!subgroup_solve(g.AS, g.hs_dec, dec, coeff)) continue;  // not a projection
                    ZVec beta(sK, Z(0));
                    for (size_t j = 0; j < ngen; ++j)
                        for (int c = 0; c < sK; ++c) beta[c] += coeff[j] * g.hk_dec[j][c];
                    for (int c = 0; c < sK; ++c)
                        mpz_fdiv_r(beta[c].get_mpz_t(), beta[c].get_mpz_t(), invK[c].get_mpz_t());
                    Q qmu = Q(t) / (s * s);
                    Q tnu = Q(N) - qmu;
                    Q qbeta = disc_q(g.AK, disc_vector(g.AK, beta));
                    Q gap = tnu - qbeta;
                    if (gap.get_den() != 1 || gap.get_num() % 2 != 0) continue;  // excluded
                    all_excluded = false;
                    // completion attempt on the definite block
                    QVec nu0 = glue_dual_K(g, beta);
                    for (const QVec& om : omegas) {
                        if (found) break;
                        QVec nb = add(nu0, om);
                        QVec bvec(bs);
                        QVec gnb = mul(to_q(GK), nb);
                        for (int i = 0; i < bs; ++i) bvec[i] = gnb[block[i]];
                        Q c0 = dot(nb, gnb);
                        bool fpc = true;
                        std::vector<ZVec> sols =
                            enumerate_quadric(Ablk, bvec, c0, tnu, fp_budget, &fpc);
                        int tried = 0;
                        for (const ZVec& x : sols) {
                            if (++tried > 16) break;
                            QVec nu = nb;
                            for (int i = 0; i < bs; ++i) nu[block[i]] += Q(x[i]);
                            QVec amb_q = add(to_ambient(M, mu), to_ambient(g.K, nu));
                            ZVec delta;
                            if (!to_z(amb_q, delta)) continue;
                            if (is_zero(delta) || content(delta) != 1) continue;
                            if (d != 0 && divisibility(L, delta) != d) continue;
                            bool ok = false;
                            try {
                                ok = in_Delta_M(L, M, delta, spec);
                            } catch (const std::exception&) {
                                ok = false;
                            }
                            if (!ok || !crossing(delta, ch)) continue;
                            flag.flag = "nonempty";
                            flag.witness = delta;
                            found = true;
                            break;
                        }
                    }
                }
            }
        }
        if (!found) flag.flag = all_excluded ? "empty" : "undetermined";
        out.push_back(flag);
    }
    return out;
}

}  // namespace k3lat
