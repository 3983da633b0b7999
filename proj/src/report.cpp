#include "k3lat/report.hpp"

#include <stdexcept>

#include "json.hpp"
#include "k3lat/chambers.hpp"
#include "k3lat/discriminant.hpp"
#include "k3lat/isometry.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/presets.hpp"
#include "k3lat/sublattice.hpp"
#include "k3lat/walls.hpp"

namespace k3lat {

namespace {

using json = nlohmann::ordered_json;

json jz(const Z& z) {
    if (z.fits_slong_p()) return (long)z.get_si();
    return z.get_str();
}

json jzvec(const ZVec& v) {
    json a = json::array();
    for (const Z& x : v) a.push_back(jz(x));
    return a;
}

json jzvecs(const std::vector<ZVec>& vs) {
    json a = json::array();
    for (const ZVec& v : vs) a.push_back(jzvec(v));
    return a;
}

json jzmat(const ZMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows; ++i) a.push_back(jzvec(m.row(i)));
    return a;
}

json jqvec(const QVec& v) {
    json a = json::array();
    for (const Q& x : v) a.push_back(x.get_str());
    return a;
}

json jqmat(const QMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows; ++i) a.push_back(jqvec(m.row(i)));
    return a;
}

Z z_from_json(const json& j) {
    if (j.is_number_integer()) return Z((long)j.get<long long>());
    if (j.is_string()) {
        try {
            return Z(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError("invalid integer literal", 0);
        }
    }
    throw ParseError("expected an integer", 0);
}

json parse_json(const std::string& text) {
    std::string body = text;
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON input", 0);
    return j;
}

ZVec zvec_from(const json& j) {
    if (!j.is_array()) throw ParseError("expected a JSON array of integers", 0);
    ZVec v;
    for (const json& e : j) v.push_back(z_from_json(e));
    return v;
}

ZMat zmat_from(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a JSON array of rows", 0);
    std::vector<ZVec> rows;
    for (const json& e : j) rows.push_back(zvec_from(e));
    for (const ZVec& r : rows)
        if (r.size() != rows[0].size()) throw ParseError("ragged matrix rows", 0);
    ZMat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t k = 0; k < rows[0].size(); ++k) m.at(i, k) = rows[i][k];
    return m;
}

json echo(const Request& r) {
    json e;
    e["command"] = r.command;
    if (!r.lattice.empty()) e["lattice"] = r.lattice;
    if (!r.ambient.empty()) {
        e["ambient"] = r.ambient;
        e["basis"] = jzvecs(r.basis);
    }
    if (!r.spec.empty()) e["spec"] = r.spec;
    e["n"] = r.n;
    if (r.base) e["base"] = jzvec(*r.base);
    if (!r.cone_rays.empty()) e["cone"] = jzvecs(r.cone_rays);
    if (r.signed_walls) {
        e["signed"] = true;
        if (r.signed_base) e["signed_base"] = jzvec(*r.signed_base);
    }
    if (r.level_bound) e["level_bound"] = jz(*r.level_bound);
    if (r.phi) e["phi"] = jzmat(*r.phi);
    if (r.psi) e["psi"] = jzmat(*r.psi);
    if (r.matrix) e["matrix"] = jzmat(*r.matrix);
    return e;
}

Sublattice build_sub(const Request& r) {
    if (r.ambient.empty()) throw std::invalid_argument("missing ambient lattice");
    Lattice L = parse_lattice(r.ambient);
    if (r.basis.empty()) throw std::invalid_argument("missing sublattice basis");
    ZMat B(r.basis.size(), L.rank);
    for (size_t i = 0; i < r.basis.size(); ++i) {
        if ((int)r.basis[i].size() != L.rank)
            throw std::invalid_argument("basis row length does not match the ambient rank");
        for (int j = 0; j < L.rank; ++j) B.at(i, j) = r.basis[i][j];
    }
    return make_sublattice(L, B);
}

WallSpec spec_of(const Request& r) {
    if (r.spec.empty()) return standard_wall_spec(r.n);
    return parse_wall_spec(r.spec);
}

// boundary rays of the positive cone of a rank-two hyperbolic form with
// rational isotropic directions
Cone rank2_full_cone(const ZMat& G) {
    Z a = G.at(0, 0), b = G.at(0, 1), c = G.at(1, 1);
    Z disc = b * b - a * c;
    if (disc <= 0 || !mpz_perfect_square_p(disc.get_mpz_t()))
        throw std::invalid_argument("positive cone is irrational; supply cone rays");
    Z s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    ZVec v1(2), v2(2);
    if (a == 0) {
        v1 = ZVec{Z(1), Z(0)};
        ZVec w{-c, 2 * b};
        v2 = is_zero(w) ? ZVec{Z(0), Z(1)} : primitive_dir(w);
    } else {
        v1 = primitive_dir(ZVec{-b + s, a});
        v2 = primitive_dir(ZVec{-b - s, a});
    }
    ZVec h = default_base(G);
    for (ZVec* v : {&v1, &v2})
        if (dot(*v, mul(G, h)) < 0) *v = scale(Z(-1), *v);
    return cone_from_rays(2, {v1, v2});
}

json admissible_json(const AdmissibleReport& ar) {
    json a;
    a["primitive"] = ar.primitive;
    a["hyperbolic"] = ar.hyperbolic;
    a["integral"] = ar.integral;
    a["monodromy"] = ar.monodromy;
    a["admissible"] = ar.admissible;
    if (!ar.failed_clause.empty()) a["failed_clause"] = ar.failed_clause;
    if (ar.involution) a["involution"] = jzmat(*ar.involution);
    return a;
}

json certificate_json(const ExtendCertificate& c) {
    json j;
    j["reason"] = c.reason;
    if (c.generator >= 0) j["generator"] = c.generator;
    if (!c.required.empty()) j["required"] = jzvec(c.required);
    if (!c.actual.empty()) j["actual"] = jzvec(c.actual);
    return j;
}

json cmd_lattice_info(const Request& r) {
    if (r.lattice.empty()) throw std::invalid_argument("missing lattice expression");
    Lattice L = parse_lattice(r.lattice);
    auto [p, q] = signature(L);
    json res;
    res["rank"] = L.rank;
    res["signature"] = json::array({p, q});
    res["determinant"] = jz(determinant(L));
    res["even"] = true;
    res["gram"] = jzmat(L.gram);
    return res;
}

json cmd_discriminant(const Request& r) {
    if (r.lattice.empty()) throw std::invalid_argument("missing lattice expression");
    Lattice L = parse_lattice(r.lattice);
    DiscriminantGroup A = discriminant_group(L);
    json res;
    res["invariants"] = jzvec(A.invariants);
    res["order"] = jz(A.order);
    json gens = json::array();
    for (const QVec& g : A.gens) gens.push_back(jqvec(g));
    res["generators"] = gens;
    res["q_values"] = jqvec(A.qvals);
    res["pairing"] = jqmat(A.pairing);
    return res;
}

json cmd_admissible(const Request& r) {
    Sublattice M = build_sub(r);
    return admissible_json(is_admissible(M, r.n));
}

json walls_json(const Request& r, const Sublattice& M, const WallEnumResult& wr) {
    json jw;
    jw["count"] = wr.classes.size();
    jw["classes"] = jzvecs(wr.classes);
    jw["certificate"] = wr.certificate;
    if (r.signed_walls) {
        if (r.signed_base) {
            jw["signed_mode"] = "base";
            jw["signed_classes"] = jzvecs(signed_against_base(wr.classes, M.gram, *r.signed_base));
        } else {
            jw["signed_mode"] = "closure";
            jw["signed_classes"] = jzvecs(signed_closure(wr.classes));
        }
    }
    return jw;
}

json cmd_walls_enum(const Request& r) {
    Sublattice M = build_sub(r);
    WallSpec spec = spec_of(r);
    Cone C;
    if (!r.cone_rays.empty())
        C = cone_from_rays(M.rank(), r.cone_rays);
    else if (M.rank() == 2)
        C = rank2_full_cone(M.gram);
    else
        throw std::invalid_argument("cone rays are required above rank two");
    WallEnumResult wr = enumerate_walls_in_cone(M, C, spec, r.level_bound);
    return walls_json(r, M, wr);
}

json cmd_extend(const Request& r) {
    Sublattice M = build_sub(r);
    if (!r.phi) throw std::invalid_argument("missing phi");
    if (!r.psi) throw std::invalid_argument("missing psi");
    GlueData g = glue(M);
    Lattice LM = as_lattice(g.S, "M");
    Lattice LK = as_lattice(g.K, "K");
    if (!is_isometry(LM, *r.phi))
        throw std::invalid_argument("phi is not an isometry of the sublattice");
    if (!is_isometry(LK, *r.psi))
        throw std::invalid_argument("psi is not an isometry of the complement");
    ExtendResult er = extend_isometry(g, *r.phi, *r.psi);
    json res;
    res["glue_order"] = jz(g.glue_order);
    res["exists"] = er.exists;
    if (er.exists)
        res["matrix"] = jzmat(er.matrix);
    else
        res["certificate"] = certificate_json(er.certificate);
    return res;
}

json cmd_monodromy(const Request& r) {
    Lattice L = r.lattice.empty() ? lattice_Ln(r.n) : parse_lattice(r.lattice);
    if (!r.matrix) throw std::invalid_argument("missing matrix");
    const ZMat& X = *r.matrix;
    json res;
    if (X.rows != L.rank || X.cols != L.rank || !is_isometry(L, X)) {
        res["isometry"] = false;
        res["member"] = false;
        return res;
    }
    res["isometry"] = true;
    res["O_plus"] = in_O_plus(L, X);
    res["spinor"] = real_spinor_norm(L, X);
    res["disc_pm"] = is_disc_pm(L, X);
    if (same_gram(L, lattice_Ln(r.n)))
        res["member"] = in_monodromy(L, X, r.n);
    else
        res["member"] = nullptr;
    return res;
}

// the classification pipeline; also feeds the DOT printer
struct ClassifyData {
    json result;
    ChamberComplex cx;
    bool stopped = false;  // inadmissible input, nothing decomposed
};

ClassifyData classify_pipeline(const Request& r) {
    ClassifyData out;
    Sublattice M = build_sub(r);
    AdmissibleReport ar = is_admissible(M, r.n);
    out.result["admissible"] = admissible_json(ar);
    if (!ar.admissible) {
        out.stopped = true;
        return out;
    }
    WallSpec full = spec_of(r);
    WallSpec roots, rest;
    for (const auto& [N, d] : full.allowed) {
        Z cap = d == 0 ? Z(2) : Z(2) * d;
        if (cap % (-N) == 0)
            roots.allowed.emplace_back(N, d);
        else
            rest.allowed.emplace_back(N, d);
    }
    ZVec base = r.base ? *r.base : default_base(M.gram);

    Polyhedron P;
    if (roots.allowed.empty()) {
        P.M = M;
        P.certificate = "complete";
        if (M.rank() == 2) {
            P.cone = rank2_full_cone(M.gram);
            P.vertices = P.cone.rays;
        } else {
            P.full_cone = true;
        }
    } else {
        P = vinberg_domain(M, roots, base, r.level_budget);
    }
    json jd;
    jd["certificate"] = P.certificate;
    jd["full_cone"] = P.full_cone;
    jd["roots"] = jzvecs(P.roots);
    jd["facets"] = jzvecs(P.facets);
    jd["vertices"] = jzvecs(P.vertices);
    out.result["domain"] = jd;

    WallEnumResult wr;
    wr.certificate = "complete";
    if (!rest.allowed.empty()) {
        if (P.full_cone)
            throw std::invalid_argument("wall enumeration over a round cone is not supported");
        wr = enumerate_walls_in_cone(M, P.cone, rest, r.level_bound);
    }
    // signed walls in the classification orient against the domain base
    Request rs = r;
    if (rs.signed_walls && !rs.signed_base) rs.signed_base = base;
    out.result["walls"] = walls_json(rs, M, wr);

    ChamberComplex cx = chamber_decomposition(P, wr.classes);
    json jc;
    jc["count"] = cx.chambers.size();
    jc["crossing_walls"] = jzvecs(cx.walls);
    json list = json::array();
    for (size_t i = 0; i < cx.chambers.size(); ++i) {
        const Chamber& ch = cx.chambers[i];
        json e;
        e["index"] = i;
        e["signs"] = ch.signs;
        e["vertices"] = jzvecs(ch.vertices);
        if (!ch.witness.empty()) e["witness"] = jqvec(ch.witness);
        list.push_back(e);
    }
    jc["list"] = list;
    json adj = json::array();
    for (const auto& [i, j, w] : cx.adjacency) adj.push_back(json::array({i, j, w}));
    jc["adjacency"] = adj;
    out.result["chambers"] = jc;

    std::vector<SymmetryVerdict> syms = polyhedron_symmetries(P, r.n);
    json js = json::array();
    for (const SymmetryVerdict& sv : syms) {
        json e;
        e["sigma"] = jzmat(sv.sigma);
        e["verdict"] = sv.verdict;
        if (sv.psi) e["psi"] = jzmat(*sv.psi);
        if (sv.obstruction) e["obstruction"] = certificate_json(*sv.obstruction);
        js.push_back(e);
    }
    out.result["symmetries"] = js;

    OrbitCount oc = chamber_orbits(cx, M.gram, syms);
    json jo;
    jo["lower"] = oc.lower;
    jo["upper"] = oc.upper;
    jo["exact"] = oc.lower == oc.upper;
    out.result["orbits"] = jo;

    ConeCount cc = chamber_count_in_cone(P, cx.chambers.size(), r.group_cap);
    json jcc;
    jcc["count"] = cc.count ? jz(*cc.count) : json(nullptr);
    jcc["reason"] = cc.reason;
    if (cc.weyl_order) jcc["weyl_order"] = jz(*cc.weyl_order);
    out.result["cone_count"] = jcc;

    if (r.simple_flags) {
        std::vector<SimpleFlag> flags =
            chamber_simple_flags(M, cx, full, r.witnesses, r.fp_budget);
        json jf = json::array();
        for (const SimpleFlag& f : flags) {
            json e;
            e["flag"] = f.flag;
            if (f.witness) e["witness"] = jzvec(*f.witness);
            jf.push_back(e);
        }
        out.result["simple_flags"] = jf;
    }
    out.cx = cx;
    return out;
}

std::string dot_output(const ChamberComplex& cx) {
    std::string s = "graph chambers {\n";
    for (size_t i = 0; i < cx.chambers.size(); ++i) {
        s += "  C" + std::to_string(i + 1) + " [label=\"C" + std::to_string(i + 1) + "\"];\n";
    }
    for (const auto& [i, j, w] : cx.adjacency) {
        std::string lbl;
        for (size_t t = 0; t < cx.walls[w].size(); ++t) {
            if (t) lbl += ",";
            lbl += cx.walls[w][t].get_str();
        }
        s += "  C" + std::to_string(i + 1) + " -- C" + std::to_string(j + 1) + " [label=\"" +
             lbl + "\"];\n";
    }
    s += "}\n";
    return s;
}

}  // namespace

ZVec zvec_from_json(const std::string& text) { return zvec_from(parse_json(text)); }

ZMat zmat_from_json(const std::string& text) { return zmat_from(parse_json(text)); }

void sublattice_from_json(const std::string& text, std::string& ambient,
                          std::vector<ZVec>& basis) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
        throw ParseError("expected {\"ambient\": ..., \"basis\": ...}", 0);
    if (!j["ambient"].is_string()) throw ParseError("ambient must be a string", 0);
    ambient = j["ambient"].get<std::string>();
    ZMat B = zmat_from(j["basis"]);
    basis.clear();
    for (int i = 0; i < B.rows; ++i) basis.push_back(B.row(i));
}

void apply_preset(Request& req, const std::string& name) {
    const Preset& p = get_preset(name);
    req.ambient = p.ambient;
    req.basis = p.basis;
    if (req.spec.empty()) req.spec = p.spec;
    req.n = p.n;
    if (!req.base) req.base = p.base;
    req.witnesses = p.witnesses;
}

RunResult run(const Request& req) {
    RunResult rr;
    try {
        if (req.command == "classify") {
            ClassifyData cd = classify_pipeline(req);
            if (req.dot) {
                if (cd.stopped) throw std::invalid_argument("sublattice is not admissible");
                rr.output = dot_output(cd.cx);
                return rr;
            }
            json out;
            out["tool"] = version_string();
            out["request"] = echo(req);
            out["result"] = cd.result;
            rr.output = out.dump(2) + "\n";
            return rr;
        }
        json res;
        if (req.command == "lattice-info")
            res = cmd_lattice_info(req);
        else if (req.command == "discriminant")
            res = cmd_discriminant(req);
        else if (req.command == "admissible")
            res = cmd_admissible(req);
        else if (req.command == "walls-enum")
            res = cmd_walls_enum(req);
        else if (req.command == "extend")
            res = cmd_extend(req);
        else if (req.command == "monodromy")
            res = cmd_monodromy(req);
        else
            throw std::invalid_argument("unknown command: " + req.command);
        json out;
        out["tool"] = version_string();
        out["request"] = echo(req);
        out["result"] = res;
        rr.output = out.dump(2) + "\n";
        return rr;
    } catch (const ParseError& e) {
        json err;
        err["error"] = std::string(e.what());
        rr.exit_code = 2;
        rr.output = err.dump(2) + "\n";
        return rr;
    } catch (const std::exception& e) {
        json err;
        err["error"] = std::string(e.what());
        rr.exit_code = 1;
        rr.output = err.dump(2) + "\n";
        return rr;
    }
}

}  // namespace k3lat
