#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>

#include "blobcalc/cli_app.hpp"

using namespace blobcalc;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/blobcalc_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

json strip_timings(const std::string& report) {
    json doc = json::parse(report);
    doc.erase("timings_ms");
    return doc;
}

}  // namespace

TEST_CASE("homology reports") {
    CliResult r = run_cli({"homology", "--coeff", "builtin:ground", "--manifold", "circle:3",
                           "--model", "blob", "--max-degree", "2"});
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["betti"]["0"] == 1);
    CHECK(doc["betti"]["1"] == 0);
    CHECK(doc["model"] == "blob");
    CHECK(doc["points"] == 3);
    CHECK(doc["version"] == kEngineVersion);
    CHECK(doc.contains("coeff_hash"));

    CliResult r2 = run_cli({"homology", "--coeff", "builtin:trunc-poly:2", "--manifold",
                            "interval:3", "--model", "blob", "--max-degree", "2"});
    REQUIRE(r2.exit_code == 0);
    json doc2 = json::parse(r2.out);
    CHECK(doc2["betti"]["0"] == 2);
    CHECK(doc2["betti"]["1"] == 0);

    CliResult r3 = run_cli({"homology", "--coeff", "builtin:matrix:2", "--manifold", "circle:3",
                            "--model", "hocolim", "--max-degree", "1"});
    REQUIRE(r3.exit_code == 0);
    CHECK(json::parse(r3.out)["betti"]["0"] == 1);

    CliResult r4 = run_cli({"homology", "--coeff", "builtin:matrix:2", "--manifold", "circle",
                            "--points", "3", "--model", "colimit", "--max-degree", "1"});
    REQUIRE(r4.exit_code == 0);
    CHECK(json::parse(r4.out)["betti"]["0"] == 1);
}

TEST_CASE("reports are byte-identical modulo timings") {
    std::vector<std::string> args = {"homology", "--coeff", "builtin:group:Z/2", "--manifold",
                                     "circle:3", "--model", "hocolim", "--max-degree", "2"};
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(strip_timings(a.out) == strip_timings(b.out));
    CHECK(strip_timings(a.out).dump() == strip_timings(b.out).dump());
}

TEST_CASE("validate exit codes") {
    SUBCASE("builtin round trip validates") {
        CliResult emitted = run_cli({"algebra", "builtin", "group:Z/2"});
        REQUIRE(emitted.exit_code == 0);
        std::string path = write_temp("z2.json", emitted.out);
        CliResult v = run_cli({"validate", path});
        CHECK(v.exit_code == 0);
        std::remove(path.c_str());
    }
    SUBCASE("non-associative tables give exit 2 and name a triple") {
        std::string bad = R"({
          "name": "broken", "field": {"char": 0}, "objects": ["*"],
          "hom": {"*,*": ["e", "g"]},
          "compose": [["*,*,*", 0, 0, 0, "1"], ["*,*,*", 0, 1, 1, "1"],
                      ["*,*,*", 1, 0, 0, "1"], ["*,*,*", 1, 1, 0, "1"]],
          "identities": {"*": [["e", "1"]]}
        })";
        std::string path = write_temp("broken.json", bad);
        CliResult v = run_cli({"validate", path});
        CHECK(v.exit_code == 2);
        CHECK(v.err.find("associativity") != std::string::npos);
        std::remove(path.c_str());
    }
    SUBCASE("malformed scalars give exit 3") {
        std::string bad = R"({
          "name": "zero-den", "field": {"char": 0}, "objects": ["*"],
          "hom": {"*,*": ["1"]},
          "compose": [["*,*,*", 0, 0, 0, "1/0"]],
          "identities": {"*": [["1", "1"]]}
        })";
        std::string path = write_temp("zeroden.json", bad);
        CliResult v = run_cli({"validate", path});
        CHECK(v.exit_code == 3);
        std::remove(path.c_str());
    }
    SUBCASE("broken JSON reports line and column with exit 3") {
        std::string path = write_temp("syntax.json", "{\n  \"name\": oops\n}");
        CliResult v = run_cli({"validate", path});
        CHECK(v.exit_code == 3);
        CHECK(v.err.find("line") != std::string::npos);
        std::remove(path.c_str());
    }
    SUBCASE("missing files give exit 3") {
        CHECK(run_cli({"validate", "/nonexistent/coeffs.json"}).exit_code == 3);
    }
}

TEST_CASE("resource caps refuse cleanly with exit 4") {
    CliResult r = run_cli({"homology", "--coeff", "builtin:matrix:2", "--manifold", "circle:4",
                           "--model", "hocolim", "--max-degree", "3", "--max-cells", "100"});
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("resource cap") != std::string::npos);
    CHECK(r.err.find("cap 100") != std::string::npos);
}

TEST_CASE("compare exit codes and truncation warning") {
    SUBCASE("agreement exits 0") {
        CliResult r = run_cli({"compare", "--coeff", "builtin:ground", "--points", "3",
                               "--max-degree", "1"});
        CHECK(r.exit_code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["equal"] == true);
        CHECK(doc["betti"]["blob"]["0"] == 1);
    }
    SUBCASE("group:Z/2 at N=4 agrees at (2,0)") {
        CliResult r = run_cli({"compare", "--coeff", "builtin:group:Z/2", "--points", "4",
                               "--max-degree", "1"});
        CHECK(r.exit_code == 0);
        json doc = json::parse(r.out);
        CHECK(doc["betti"]["blob"]["0"] == 2);
        CHECK(doc["betti"]["blob"]["1"] == 0);
    }
    SUBCASE("unconverged truncation mismatches exit 5") {
        // At N=2 the truncated models differ from the Hochschild oracle in
        // degree 1.
        CliResult r = run_cli({"compare", "--coeff", "builtin:trunc-poly:2", "--points", "2",
                               "--max-degree", "1"});
        CHECK(r.exit_code == 5);
        CHECK(r.err.find("warning") == std::string::npos);
    }
    SUBCASE("max degree >= points warns about truncation") {
        CliResult r = run_cli({"compare", "--coeff", "builtin:ground", "--points", "3",
                               "--max-degree", "3"});
        CHECK(r.err.find("warning") != std::string::npos);
    }
}

TEST_CASE("sweep reports convergence and the oracle verdict") {
    CliResult r = run_cli({"sweep", "--coeff", "builtin:trunc-poly:2", "--points", "2..4",
                           "--max-degree", "2"});
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["sweep"].size() == 3);
    CHECK(doc["sweep"][0]["points"] == 2);
    CHECK(doc["converged"]["0"]["converged"] == true);
    CHECK(doc["converged"]["0"]["value"] == 2);
    CHECK(doc["converged"]["1"]["oracle"] == 1);
    CHECK(doc["oracle_match"] == true);
}

TEST_CASE("usage errors") {
    CHECK(run_cli({"homology", "--coeff", "builtin:ground", "--manifold", "moebius:2",
                   "--max-degree", "1"})
              .exit_code == 1);
    CHECK(run_cli({"homology", "--coeff", "builtin:nope", "--manifold", "circle:2",
                   "--max-degree", "1"})
              .exit_code == 3);
    CHECK(run_cli({"sweep", "--coeff", "builtin:ground", "--points", "2", "--max-degree", "2"})
              .exit_code == 1);
    CHECK(run_cli({"frobnicate"}).exit_code != 0);
}

TEST_CASE("fixed boundary filters sectors") {
    CliResult r = run_cli({"homology", "--coeff", "builtin:trunc-poly:2", "--manifold",
                           "interval:2", "--model", "blob", "--max-degree", "2",
                           "--fix-boundary", "*"});
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["betti"]["0"] == 2);
    CHECK(doc["betti"]["1"] == 0);
}

TEST_CASE("pretty output renders a table") {
    CliResult r = run_cli({"homology", "--coeff", "builtin:ground", "--manifold", "circle:3",
                           "--model", "blob", "--max-degree", "2", "--pretty"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("degree") != std::string::npos);
    CHECK(r.out.find('{') == std::string::npos);
}
