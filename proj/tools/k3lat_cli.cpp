// command line front end: parses arguments into a Request and prints the
// JSON (or DOT) report produced by the library
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "k3lat/common.hpp"
#include "k3lat/report.hpp"

using namespace k3lat;

namespace {

// inline JSON if the argument looks like JSON, otherwise a file path
std::string load_arg(const std::string& s) {
    if (!s.empty() && (s[0] == '{' || s[0] == '[')) return s;
    std::ifstream in(s);
    if (!in) throw ParseError("cannot open file: " + s, 0);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

long env_long(const char* name, long dflt) {
    const char* v = std::getenv(name);
    if (!v) return dflt;
    try {
        return std::stol(v);
    } catch (const std::exception&) {
        return dflt;
    }
}

struct SubArgs {
    std::string preset;
    std::string sublattice;
    std::string spec;
    std::string base;
    std::string cone;
    std::string bound;
    std::string phi, psi, matrix, lattice;
    int n = 2;
    bool signed_walls = false;
    bool dot = false;
    bool flags = false;
};

void add_sublattice_opts(CLI::App* sub, SubArgs& a) {
    sub->add_option("--preset", a.preset, "named worked example (ex-comp, ex-nonsep, ex-four)");
    sub->add_option("--sublattice", a.sublattice,
                    "sublattice as {\"ambient\": expr, \"basis\": [[..],..]} (inline or file)");
    sub->add_option("--spec", a.spec, "wall spec, e.g. \"-2, -10:div2\"");
    sub->add_option("-n,--deformation", a.n, "deformation parameter n (default 2)");
}

void fill_common(Request& req, const SubArgs& a) {
    req.n = a.n;
    req.spec = a.spec;
    if (!a.base.empty()) req.base = zvec_from_json(load_arg(a.base));
    if (!a.preset.empty())
        apply_preset(req, a.preset);
    else if (!a.sublattice.empty())
        sublattice_from_json(load_arg(a.sublattice), req.ambient, req.basis);
    if (!a.bound.empty()) {
        try {
            req.level_bound = Z(a.bound);
        } catch (const std::exception&) {
            throw ParseError("invalid bound: " + a.bound, 0);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice classification toolkit"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);

    SubArgs info_a, disc_a, adm_a, walls_a, cls_a, ext_a, mono_a;

    CLI::App* info = app.add_subcommand("lattice-info", "basic invariants of a lattice");
    info->add_option("expr", info_a.lattice, "lattice expression")->required();

    CLI::App* disc = app.add_subcommand("discriminant", "discriminant group and torsion form");
    disc->add_option("expr", disc_a.lattice, "lattice expression")->required();

    CLI::App* adm = app.add_subcommand("admissible", "test a sublattice for admissibility");
    add_sublattice_opts(adm, adm_a);

    CLI::App* walls = app.add_subcommand("walls-enum", "wall divisor classes crossing a cone");
    add_sublattice_opts(walls, walls_a);
    walls->add_option("--cone", walls_a.cone, "cone rays as a JSON array (inline or file)");
    walls->add_option("--bound", walls_a.bound, "search bound on the base level");
    walls->add_flag("--signed", walls_a.signed_walls, "emit signed classes as well");
    walls->add_option("--base", walls_a.base, "orient signed classes against this vector");

    CLI::App* cls = app.add_subcommand("classify", "domain, chambers, symmetries and orbits");
    add_sublattice_opts(cls, cls_a);
    cls->add_option("--base", cls_a.base, "base point in sublattice coordinates (JSON)");
    cls->add_option("--bound", cls_a.bound, "search bound on the wall level");
    cls->add_flag("--signed", cls_a.signed_walls, "emit signed wall classes as well");
    cls->add_flag("--dot", cls_a.dot, "print the chamber adjacency graph as DOT");
    cls->add_flag("--flags", cls_a.flags, "compute per-chamber wall existence flags");

    CLI::App* ext = app.add_subcommand("extend", "extend isometries through the glue group");
    add_sublattice_opts(ext, ext_a);
    ext->add_option("--phi", ext_a.phi, "isometry of the sublattice (JSON matrix)")->required();
    ext->add_option("--psi", ext_a.psi, "isometry of the complement (JSON matrix)")->required();

    CLI::App* mono = app.add_subcommand("monodromy", "monodromy membership of an isometry");
    mono->add_option("--lattice", mono_a.lattice, "ambient lattice expression (default Ln)");
    mono->add_option("--matrix", mono_a.matrix, "isometry as a JSON matrix (inline or file)")
        ->required();
    mono->add_option("-n,--deformation", mono_a.n, "deformation parameter n (default 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Request req;
    req.level_budget = (int)env_long("K3LAT_LEVEL_BUDGET", 256);
    req.group_cap = env_long("K3LAT_GROUP_CAP", 20000);
    req.fp_budget = env_long("K3LAT_FP_BUDGET", 4000);

    try {
        if (info->parsed()) {
            req.command = "lattice-info";
            req.lattice = info_a.lattice;
        } else if (disc->parsed()) {
            req.command = "discriminant";
            req.lattice = disc_a.lattice;
        } else if (adm->parsed()) {
            req.command = "admissible";
            fill_common(req, adm_a);
        } else if (walls->parsed()) {
            req.command = "walls-enum";
            SubArgs a = walls_a;
            std::string base_text = a.base;
            a.base.clear();  // walls-enum --base orients signs, it is not a domain base
            fill_common(req, a);
            req.base.reset();
            req.signed_walls = a.signed_walls;
            if (!base_text.empty()) req.signed_base = zvec_from_json(load_arg(base_text));
            if (!a.cone.empty()) {
                ZMat C = zmat_from_json(load_arg(a.cone));
                for (int i = 0; i < C.rows; ++i) req.cone_rays.push_back(C.row(i));
            }
        } else if (cls->parsed()) {
            req.command = "classify";
            fill_common(req, cls_a);
            req.signed_walls = cls_a.signed_walls;
            req.dot = cls_a.dot;
            req.simple_flags = cls_a.flags;
        } else if (ext->parsed()) {
            req.command = "extend";
            fill_common(req, ext_a);
            req.phi = zmat_from_json(load_arg(ext_a.phi));
            req.psi = zmat_from_json(load_arg(ext_a.psi));
        } else if (mono->parsed()) {
            req.command = "monodromy";
            req.lattice = mono_a.lattice;
            req.n = mono_a.n;
            req.matrix = zmat_from_json(load_arg(mono_a.matrix));
        }
    } catch (const ParseError& e) {
        nlohmann::ordered_json err;
        err["error"] = std::string(e.what());
        std::cout << err.dump(2) << "\n";
        return 2;
    }

    RunResult rr = run(req);
    std::cout << rr.output;
    return rr.exit_code;
}
