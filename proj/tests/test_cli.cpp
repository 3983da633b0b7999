#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

// run the built binary with the given arguments, capturing stdout+stderr
CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(K3LAT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

json result_of(const CliResult& r) {
    json doc = json::parse(r.output);
    return doc.at("result");
}

}  // namespace

TEST_CASE("lattice info reports the model invariants") {
    CliResult r = run_cli("lattice-info L2");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc.at("tool") == "k3lat 1.0.0");
    CHECK(doc.at("request").at("command") == "lattice-info");
    json res = doc.at("result");
    CHECK(res.at("rank") == 23);
    CHECK(res.at("signature") == json::array({3, 20}));
    CHECK(res.at("determinant") == 2);
    CHECK(res.at("even") == true);
}

TEST_CASE("discriminant groups in rational form") {
    CliResult r = run_cli("discriminant \"<2> + <-2>\"");
    REQUIRE(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res.at("invariants") == json::array({2, 2}));
    CHECK(res.at("order") == 4);
    CHECK(res.at("q_values") == json::array({"1/2", "3/2"}));
}

TEST_CASE("classify output is deterministic") {
    CliResult a = run_cli("classify --preset ex-comp");
    CliResult b = run_cli("classify --preset ex-comp");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);
    json res = result_of(a);
    CHECK(res.at("admissible").at("admissible") == true);
    CHECK(res.at("chambers").at("count") == 2);
    CHECK(res.at("orbits").at("upper") == 2);
    CHECK(res.at("cone_count").at("count") == 4);
}

TEST_CASE("signed wall listing for the worked example") {
    CliResult r = run_cli("walls-enum --preset ex-comp --signed");
    REQUIRE(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res.at("count") == 3);
    CHECK(res.at("classes") ==
          json::array({{0, 1}, {2, -3}, {2, 3}}));
    CHECK(res.at("certificate") == "complete");
    CHECK(res.at("signed_mode") == "closure");
    CHECK(res.at("signed_classes") ==
          json::array({{-2, -3}, {-2, 3}, {0, -1}, {0, 1}, {2, -3}, {2, 3}}));
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run_cli("badcmd").exit_code == 2);
    CHECK(run_cli("lattice-info --nope").exit_code == 2);
    CHECK(run_cli("lattice-info \"U + E9\"").exit_code == 2);
    CliResult r = run_cli("admissible --sublattice '{\"ambient\": \"L2\", \"basis\": [[1,0'");
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.output).at("error") == "malformed JSON input (at position 0)");
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("domain errors exit with code one") {
    std::string basis = "[[1";
    for (int i = 1; i < 23; ++i) basis += ",0";
    basis += "],[2";
    for (int i = 1; i < 23; ++i) basis += ",0";
    basis += "]]";
    CliResult r = run_cli("admissible --sublattice '{\"ambient\": \"L2\", \"basis\": " + basis +
                          "}'");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.output).at("error") == "sublattice basis rows are dependent");
}

TEST_CASE("graph output renders the chamber adjacency") {
    CliResult r = run_cli("classify --preset ex-comp --dot");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("graph chambers {") != std::string::npos);
    CHECK(r.output.find("C1 [label=\"C1\"];") != std::string::npos);
    CHECK(r.output.find("C1 -- C2 [label=\"2,-3\"];") != std::string::npos);
}

TEST_CASE("monodromy verdict for the identity") {
    std::string rows = "[";
    for (int i = 0; i < 23; ++i) {
        rows += (i ? ",[" : "[");
        for (int j = 0; j < 23; ++j) {
            rows += (j ? "," : "");
            rows += (i == j ? "1" : "0");
        }
        rows += "]";
    }
    rows += "]";
    CliResult r = run_cli("monodromy --matrix '" + rows + "' -n 2");
    REQUIRE(r.exit_code == 0);
    json res = result_of(r);
    CHECK(res.at("isometry") == true);
    CHECK(res.at("O_plus") == true);
    CHECK(res.at("spinor") == 1);
    CHECK(res.at("disc_pm") == true);
    CHECK(res.at("member") == true);
}
