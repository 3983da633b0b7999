#include "k3lat/cones.hpp"

#include <algorithm>
#include <stdexcept>

#include "k3lat/matq.hpp"

namespace k3lat {

namespace {

void sort_unique(std::vector<ZVec>& v) {
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

ZMat stack_rows(int dim, const std::vector<ZVec>& rows) {
    ZMat A(rows.size(), dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < dim; ++j) A.at(i, j) = rows[i][j];
    return A;
}

// indices of the constraints tight at r
std::vector<int> tight_set(const ZVec& r, const std::vector<ZVec>& constraints) {
    std::vector<int> out;
    for (size_t i = 0; i < constraints.size(); ++i)
        if (dot(constraints[i], r) == 0) out.push_back(i);
    return out;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// one double-description cut: rays of cone(rays) ∩ {f >= 0}, where
// `constraints` is a complete halfspace description of cone(rays)
std::vector<ZVec> dd_cut(const std::vector<ZVec>& rays, const std::vector<ZVec>& constraints,
                         const ZVec& f) {
    std::vector<ZVec> pos, zero, neg;
    for (const ZVec& r : rays) {
        Z v = dot(f, r);
        if (v > 0)
            pos.push_back(r);
        else if (v == 0)
            zero.push_back(r);
        else
            neg.push_back(r);
    }
    if (neg.empty()) return rays;

    std::vector<ZVec> out = pos;
    out.insert(out.end(), zero.begin(), zero.end());
    // adjacent (positive, negative) pairs contribute the rays cut out on f=0;
    // adjacency by the combinatorial dominance test on tight sets
    std::vector<std::vector<int>> tights;
    for (const ZVec& r : rays) tights.push_back(tight_set(r, constraints));
    for (size_t p = 0; p < rays.size(); ++p) {
        if (dot(f, rays[p]) <= 0) continue;
        for (size_t n = 0; n < rays.size(); ++n) {
            if (dot(f, rays[n]) >= 0) continue;
            std::vector<int> common;
            std::set_intersection(tights[p].begin(), tights[p].end(), tights[n].begin(),
                                  tights[n].end(), std::back_inserter(common));
            bool adjacent = true;
            for (size_t o = 0; o < rays.size(); ++o) {
                if (o == p || o == n) continue;
                if (subset_of(common, tights[o])) {
                    adjacent = false;
                    break;
                }
            }
            if (!adjacent) continue;
            Z vp = dot(f, rays[p]);
            Z vn = dot(f, rays[n]);
            ZVec w = sub(scale(vp, rays[n]), scale(vn, rays[p]));
            out.push_back(primitive_dir(w));
        }
    }
    sort_unique(out);
    return out;
}

}  // namespace

Cone cone_from_rays(int dim, const std::vector<ZVec>& rays) {
    Cone C;
    C.dim = dim;
    for (const ZVec& r : rays) {
        if ((int)r.size() != dim) throw std::invalid_argument("ray length mismatch");
        if (is_zero(r)) continue;
        C.rays.push_back(primitive_dir(r));
    }
    sort_unique(C.rays);
    // simplicial full-dimensional cones get their dual description for free
    if ((int)C.rays.size() == dim) {
        ZMat R(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) R.at(i, j) = C.rays[j][i];
        QMat Rq = to_q(R);
        if (rank_q(Rq) == dim) {
            QMat inv = inverse(Rq);
            for (int i = 0; i < dim; ++i)
                C.normals.push_back(primitive_dir(clear_denominators(inv.row(i))));
            std::sort(C.normals.begin(), C.normals.end(), lex_less);
        }
    }
    return C;
}

Cone cone_from_halfspaces(int dim, const std::vector<ZVec>& normals) {
    std::vector<ZVec> ns;
    for (const ZVec& n : normals) {
        if ((int)n.size() != dim) throw std::invalid_argument("normal length mismatch");
        if (is_zero(n)) continue;
        ns.push_back(primitive_dir(n));
    }
    {
        std::vector<ZVec> dedup = ns;
        sort_unique(dedup);
        ns = dedup;
    }
    if (rank_z(stack_rows(dim, ns)) < dim) throw std::invalid_argument("cone is not pointed");

    // greedy independent subset for the simplicial start
    std::vector<int> chosen;
    std::vector<ZVec> acc;
    for (size_t i = 0; i < ns.size() && (int)chosen.size() < dim; ++i) {
        acc.push_back(ns[i]);
        if (rank_z(stack_rows(dim, acc)) == (int)acc.size())
            chosen.push_back(i);
        else
            acc.pop_back();
    }
    QMat N0(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) N0.at(i, j) = Q(ns[chosen[i]][j]);
    QMat inv = inverse(N0);
    std::vector<ZVec> rays;
    for (int j = 0; j < dim; ++j) {
        QVec col(dim);
        for (int i = 0; i < dim; ++i) col[i] = inv.at(i, j);
        rays.push_back(primitive_dir(clear_denominators(col)));
    }

    std::vector<ZVec> processed;
    for (int i : chosen) processed.push_back(ns[i]);
    for (size_t i = 0; i < ns.size(); ++i) {
        if (std::find(chosen.begin(), chosen.end(), (int)i) != chosen.end()) continue;
        rays = dd_cut(rays, processed, ns[i]);
        processed.push_back(ns[i]);
    }

    Cone C;
    C.dim = dim;
    C.rays = rays;
    sort_unique(C.rays);
    C.normals = ns;
    return C;
}

std::pair<Cone, Cone> split_cone(const Cone& C, const ZVec& f) {
    if (C.normals.empty() && !C.rays.empty())
        throw std::logic_error("cone carries no halfspace description");
    if ((int)f.size() != C.dim) throw std::invalid_argument("functional length mismatch");
    Cone plus, minus;
    plus.dim = minus.dim = C.dim;
    plus.rays = dd_cut(C.rays, C.normals, f);
    minus.rays = dd_cut(C.rays, C.normals, scale(Z(-1), f));
    plus.normals = C.normals;
    plus.normals.push_back(primitive_dir(f));
    minus.normals = C.normals;
    minus.normals.push_back(primitive_dir(scale(Z(-1), f)));
    return {plus, minus};
}

int cone_dim(const Cone& C) {
    if (C.rays.empty()) return 0;
    return rank_z(stack_rows(C.dim, C.rays));
}

ZVec interior_point(const Cone& C) {
    ZVec h(C.dim, Z(0));
    for (const ZVec& r : C.rays) h = add(h, r);
    return h;
}

std::vector<int> ray_signs(const ZVec& f, const Cone& C) {
    std::vector<int> out;
    for (const ZVec& r : C.rays) {
        Z v = dot(f, r);
        out.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    }
    return out;
}

bool meets_open(const std::vector<int>& signs) {
    if (signs.empty()) return false;
    bool pos = false, negs = false, nonzero = false;
    for (int s : signs) {
        if (s > 0) pos = true;
        if (s < 0) negs = true;
        if (s != 0) nonzero = true;
    }
    return (pos && negs) || !nonzero;
}

bool meets_closed(const std::vector<int>& signs) {
    if (signs.empty()) return false;
    bool pos = false, negs = false, zero = false;
    for (int s : signs) {
        if (s > 0) pos = true;
        if (s < 0) negs = true;
        if (s == 0) zero = true;
    }
    return zero || (pos && negs);
}

bool is_facet(const Cone& C, const ZVec& f) {
    std::vector<int> signs = ray_signs(f, C);
    bool pos = false, negs = false;
    std::vector<ZVec> tight;
    for (size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0) pos = true;
        if (signs[i] < 0) negs = true;
        if (signs[i] == 0) tight.push_back(C.rays[i]);
    }
    if (pos && negs) return false;
    if (tight.empty()) return false;
    return rank_z(stack_rows(C.dim, tight)) == cone_dim(C) - 1;
}

}  // namespace k3lat
