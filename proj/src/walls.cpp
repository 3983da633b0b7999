#include "k3lat/walls.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "k3lat/common.hpp"
#include "k3lat/fincke_pohst.hpp"
#include "k3lat/matq.hpp"

namespace k3lat {

namespace {

// flip the sign so the first nonzero entry is positive
ZVec sign_canon(const ZVec& v) {
    for (const Z& x : v) {
        if (x > 0) break;
        if (x < 0) {
            ZVec w(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
            return w;
        }
    }
    return v;
}

bool first_nonzero_positive(const ZVec& v) {
    for (const Z& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

void require_primitive_class(const ZVec& delta, const char* what) {
    if (is_zero(delta)) throw std::invalid_argument(std::string(what) + " requires a nonzero class");
    if (content(delta) != 1)
        throw std::invalid_argument(std::string(what) + " requires a primitive class");
}

}  // namespace

WallSpec parse_wall_spec(const std::string& text) {
    WallSpec spec;
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    };
    while (true) {
        skip_space();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == digits) throw ParseError("expected an integer norm", start);
        Z norm(text.substr(start, pos - start));
        Z div = 0;
        skip_space();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            if (text.compare(pos, 3, "div") != 0)
                throw ParseError("expected 'div' after ':'", pos);
            pos += 3;
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
            if (pos == dstart) throw ParseError("expected a divisibility value", dstart);
            div = Z(text.substr(dstart, pos - dstart));
            if (div <= 0) throw ParseError("divisibility must be positive", dstart);
        }
        spec.allowed.emplace_back(norm, div);
        skip_space();
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError("expected ','", pos);
        ++pos;
    }
    if (spec.allowed.empty()) throw ParseError("empty wall spec", 0);
    return spec;
}

std::string to_string(const WallSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.allowed.size(); ++i) {
        if (i) out += ",";
        out += spec.allowed[i].first.get_str();
        if (spec.allowed[i].second != 0) out += ":div" + spec.allowed[i].second.get_str();
    }
    return out;
}

WallSpec standard_wall_spec(int n) {
    if (n != 2) throw std::invalid_argument("standard wall norms are tabulated for n = 2 only");
    WallSpec spec;
    spec.allowed.emplace_back(Z(-2), Z(0));
    spec.allowed.emplace_back(Z(-10), Z(2));
    return spec;
}

bool is_wall_divisor_n2(const Lattice& L, const ZVec& delta) {
    require_primitive_class(delta, "wall divisor test");
    Z N = norm(L, delta);
    if (N == -2) return true;
    if (N == -10) return divisibility(L, delta) == 2;
    return false;
}

bool matches_wall_spec(const Lattice& L, const ZVec& delta, const WallSpec& spec) {
    require_primitive_class(delta, "wall spec test");
    Z N = norm(L, delta);
    for (const auto& [n, d] : spec.allowed) {
        if (N != n) continue;
        if (d == 0 || divisibility(L, delta) == d) return true;
    }
    return false;
}

bool in_LnM(const Lattice& L, const Sublattice& M, const ZVec& delta) {
    if ((int)delta.size() != L.rank) throw std::invalid_argument("vector length mismatch");
    if (is_zero(delta)) throw std::invalid_argument("zero vector has no wall hyperplane");
    if (!same_gram(M.ambient, L)) throw std::invalid_argument("sublattice has a different ambient");
    QVec p = project(M, delta);
    QVec q = sub(to_q(delta), p);
    return norm_q(L, p) < 0 && norm_q(L, q) < 0;
}

bool in_Delta_M(const Lattice& L, const Sublattice& M, const ZVec& delta, const WallSpec& spec) {
    return matches_wall_spec(L, delta, spec) && in_LnM(L, M, delta);
}

std::vector<ZVec> enumerate_norm_crossing(const ZMat& gram, const Cone& C, const Z& N,
                                          bool require_primitive,
                                          const std::optional<Z>& level_bound, bool* complete) {
    int r = gram.rows;
    if (gram.cols != r) throw std::invalid_argument("gram matrix is not square");
    if (C.dim != r) throw std::invalid_argument("cone dimension mismatch");
    if (N >= 0) throw std::invalid_argument("wall norms must be negative");
    if (C.rays.empty()) throw std::invalid_argument("cone has no rays");
    Inertia in = signature_q(to_q(gram));
    if (!(in.pos == 1 && in.zero == 0 && in.neg == r - 1))
        throw std::invalid_argument("wall enumeration requires a hyperbolic lattice");

    // validate that C sits in one closed positive cone
    ZVec h0 = interior_point(C);
    ZVec gh = mul(gram, h0);
    Z H = dot(h0, gh);
    if (H <= 0) throw std::invalid_argument("cone is not inside the positive cone");
    Z R = 0;
    for (const ZVec& ray : C.rays) {
        Z nn = dot(ray, mul(gram, ray));
        if (nn < 0) throw std::invalid_argument("cone is not inside the positive cone");
        Z p = dot(ray, gh);
        if (p <= 0) throw std::invalid_argument("cone is not inside the positive cone");
        if (p > R) R = p;
    }
    for (std::size_t i = 0; i < C.rays.size(); ++i)
        for (std::size_t j = i + 1; j < C.rays.size(); ++j)
            if (dot(C.rays[i], mul(gram, C.rays[j])) < 0)
                throw std::invalid_argument("cone is not inside the positive cone");

    // crossing bound: |(delta, h0)| <= R|N|/2 - H/(2R), plus the level-0 slice
    Z amax;
    bool derived_complete = true;
    if (level_bound) {
        amax = *level_bound;
        if (amax < 0) throw std::invalid_argument("level bound must be nonnegative");
        derived_complete = false;
    } else {
        Q exact = Q(R * (-N)) / 2 - Q(H) / (2 * R);
        Z fl;
        mpz_fdiv_q(fl.get_mpz_t(), exact.get_num().get_mpz_t(), exact.get_den().get_mpz_t());
        amax = fl < 0 ? Z(0) : fl;
    }
    if (complete) *complete = derived_complete;

    // kernel of the level functional is negative definite
    ZMat F(1, r);
    for (int j = 0; j < r; ++j) F.at(0, j) = gh[j];
    ZMat B = kernel(F);
    ZMat A = mul(mul(B, gram), transpose(B));
    QMat Aq = to_q(A);
    Z cg = content(gh);

    std::vector<ZVec> out;
    for (Z a = 0; a <= amax; a += cg) {
        ZVec x0(r, Z(0));
        if (a != 0) {
            ZVec rhs{a};
            if (!solve(F, rhs, x0)) continue;
        }
        ZVec bz = mul(mul(B, gram), x0);
        QVec bq = to_q(bz);
        Q c0 = Q(dot(x0, mul(gram, x0)));
        std::vector<ZVec> sols = enumerate_quadric(Aq, bq, c0, Q(N));
        for (const ZVec& s : sols) {
            ZVec delta = add(x0, mul_row(s, B));
            if (a == 0 && !first_nonzero_positive(delta)) continue;
            if (require_primitive && content(delta) != 1) continue;
            ZVec fd = mul(gram, delta);
            std::vector<int> signs;
            signs.reserve(C.rays.size());
            for (const ZVec& ray : C.rays) {
                Z v = dot(fd, ray);
                signs.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
            }
            if (!meets_open(signs)) continue;
            out.push_back(sign_canon(delta));
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WallEnumResult enumerate_walls_in_cone(const Sublattice& M, const Cone& C, const WallSpec& spec,
                                       const std::optional<Z>& level_bound) {
    if (spec.allowed.empty()) throw std::invalid_argument("empty wall spec");
    if (!is_primitive(M)) throw std::invalid_argument("wall enumeration requires a primitive sublattice");
    WallEnumResult res;
    bool all_complete = true;
    for (const auto& [N, d] : spec.allowed) {
        bool comp = true;
        std::vector<ZVec> found =
            enumerate_norm_crossing(M.gram, C, N, /*require_primitive=*/true, level_bound, &comp);
        all_complete = all_complete && comp;
        for (const ZVec& delta : found) {
            if (d != 0 && divisibility(M.ambient, to_ambient(M, delta)) != d) continue;
            res.classes.push_back(delta);
        }
    }
    std::sort(res.classes.begin(), res.classes.end(), lex_less);
    res.classes.erase(std::unique(res.classes.begin(), res.classes.end()), res.classes.end());
    res.certificate = all_complete ? "complete" : "bounded_search";
    return res;
}

std::vector<ZVec> signed_closure(const std::vector<ZVec>& classes) {
    std::vector<ZVec> out;
    for (const ZVec& c : classes) {
        out.push_back(c);
        out.push_back(scale(Z(-1), c));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ZVec> signed_against_base(const std::vector<ZVec>& classes, const ZMat& gram,
                                      const ZVec& base) {
    std::vector<ZVec> out;
    for (const ZVec& c : classes) {
        Z s = dot(c, mul(gram, base));
        if (s > 0) {
            out.push_back(c);
        } else if (s < 0) {
            out.push_back(scale(Z(-1), c));
        } else {
            out.push_back(c);
            out.push_back(scale(Z(-1), c));
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace k3lat
