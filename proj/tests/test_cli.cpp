#include "doctest.h"

#include "rho/corpus.hpp"
#include "rho/errors.hpp"
#include "rho/hodge.hpp"
#include "rho/mirror.hpp"
#include "rho/report.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace rho;

namespace {

namespace fs = std::filesystem;

int run(const std::string& args)
{
    std::string cmd = std::string(RHO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args)
{
    fs::path out = fs::temp_directory_path() / "rho_cli_capture.txt";
    std::string cmd = std::string(RHO_CLI_PATH) + " " + args + " >" + out.string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(out);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path corpus_dir()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "rho_cli_corpus";
        fs::remove_all(d);
        fs::create_directories(d);
        for (const auto& e : corpus_catalog()) {
            std::ofstream(d / (e.name + ".json")) << emit_algebra_file(corpus_file(e.name));
        }
        return d;
    }();
    return dir;
}

std::string path(const std::string& name)
{
    return (corpus_dir() / (name + ".json")).string();
}

} // namespace

TEST_CASE("corpus: every entry round-trips and passes its own checks")
{
    for (const auto& e : corpus_catalog()) {
        CAPTURE(e.name);
        AlgebraFile f = corpus_file(e.name);
        CHECK(f.name == e.name);
        std::string text = emit_algebra_file(f);
        AlgebraFile back = parse_algebra_file(text);
        CHECK(back == f);
        CHECK(emit_algebra_file(back) == text);
        if (f.kind == "free-dga" || f.kind == "tabular-dga") {
            CHECK(check_dga(load_dga(f, 8)).pass);
        } else if (f.kind == "bicomplex") {
            MetricBicomplex b = load_bicomplex(f);
            CHECK(check_dga(*b.carrier).pass);
            CHECK(check_dga(b.dc_algebra()).pass);
        } else if (f.kind == "frobenius") {
            CHECK_NOTHROW(load_frobenius(f));
        } else {
            REQUIRE(f.kind == "cy-package");
            CHECK(b_algebra(load_cy(f).package).transport_audit);
        }
    }
}

TEST_CASE("corpus: catalog names")
{
    std::vector<std::string> names;
    for (const auto& e : corpus_catalog())
        names.push_back(e.name);
    for (const char* expected :
         {"point", "sphere-S2", "sphere-S3", "cpn-2", "cpn-6", "torus-T2", "torus-T4", "torus-T6", "torus-T2-dolbeault",
          "torus-T6-dolbeault", "heisenberg", "iwasawa-type", "kahler-square", "kahler-square-tensor", "t2-cy-package",
          "t4-hyperkahler-package", "cy3-diamond-template"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    CHECK_THROWS_AS(corpus_file("nope"), PreconditionError);
}

TEST_CASE("reports: contents")
{
    Report s2 = cohomology_report(corpus_file("sphere-S2"), 8);
    CHECK(s2.machine["dims"] == nlohmann::ordered_json({1, 0, 1, 0, 0, 0, 0, 0, 0}));

    AlgebraFile flat = corpus_file("torus-T4");
    Report t4 = cohomology_report(flat, 8);
    std::vector<std::size_t> dims;
    auto a = load_dga(flat, 8);
    for (int p = 0; p <= 8; ++p)
        dims.push_back(a.dim(p));
    CHECK(t4.machine["dims"].get<std::vector<std::size_t>>() == dims);

    Report mm = minimal_model_report(corpus_file("sphere-S2"), 8);
    CHECK(mm.machine["generator_counts"]["2"] == 1);
    CHECK(mm.machine["generator_counts"]["3"] == 1);
    CHECK(mm.machine["rho"]["quasi_isomorphism"]["quasi_isomorphism"] == true);
    CHECK(minimal_model_report(corpus_file("point"), 8).machine["generators"].empty());
    CHECK_THROWS_AS(minimal_model_report(corpus_file("heisenberg"), 8), PreconditionError);

    Report square = formality_report(corpus_file("kahler-square"), "hodge", 8);
    CHECK(square.machine["certificate"]["valid"] == true);
    Report iw = formality_report(corpus_file("iwasawa-type"), "hodge", 8);
    CHECK(iw.machine["certificate"].is_null());
    CHECK(iw.machine["refusal"]["hypothesis"] == "box_d = box_dc");
    CHECK(formality_report(corpus_file("torus-T4"), "direct", 8).machine["status"] == "formal");
    CHECK_THROWS_AS(formality_report(corpus_file("torus-T4"), "hodge", 8), PreconditionError);

    Report self = mirror_report(corpus_file("t2-cy-package"), corpus_file("t2-cy-package"), 1000);
    CHECK(self.machine["verdict"]["outcome"] == "isomorphism");
    CHECK(self.machine["verdict"]["isomorphism"]["verified"] == true);
    CHECK(self.machine["yukawa"]["rational"] == true);
    Report mismatch = mirror_report(corpus_file("cy3-diamond-template"), corpus_file("t2-cy-package"), 1000);
    CHECK(mismatch.machine["verdict"].contains("obstruction"));
    Report none = mirror_report(corpus_file("t2-cy-package"), corpus_file("t2-cy-package"), 0);
    CHECK(none.machine["verdict"]["outcome"] == "inconclusive");
}

TEST_CASE("cli: exit codes")
{
    CHECK(run("cohomology " + path("sphere-S2")) == 0);
    CHECK(run("corpus --list") == 0);
    fs::path bad = fs::temp_directory_path() / "rho_cli_bad.json";
    std::ofstream(bad) << "{\"kind\": ";
    CHECK(run("cohomology " + bad.string()) == 2);
    std::ofstream(bad, std::ios::trunc) << "{\"kind\": \"free-dga\", \"colour\": 1}";
    CHECK(run("cohomology " + bad.string()) == 2);
    CHECK(run("cohomology /nonexistent/file.json") == 2);
    CHECK(run("minimal-model " + path("heisenberg")) == 3);
    CHECK(run("formality --engine hodge " + path("sphere-S2")) == 3);
    CHECK(run("mirror " + path("kahler-square") + " " + path("t2-cy-package")) == 3);
    CHECK(run("corpus nope") == 3);
    CHECK(run("nosuchcommand") == 2);
}

TEST_CASE("cli: corpus output and determinism")
{
    CHECK(capture("corpus sphere-S2") == emit_algebra_file(corpus_file("sphere-S2")));
    std::string listing = capture("corpus --list");
    CHECK(listing.find("kahler-square-tensor") != std::string::npos);

    fs::path dir = fs::temp_directory_path() / "rho_cli_all";
    fs::remove_all(dir);
    REQUIRE(run("corpus --all --dir " + dir.string()) == 0);
    for (const auto& e : corpus_catalog()) {
        std::ifstream in(dir / (e.name + ".json"));
        std::stringstream s;
        s << in.rdbuf();
        CHECK(parse_algebra_file(s.str()) == corpus_file(e.name));
    }

    for (const std::string args :
         {"cohomology --format json " + path("heisenberg"), "minimal-model --format json " + path("sphere-S3"),
          "formality --format json " + path("kahler-square"), "formality --format json " + path("sphere-S2"),
          "mirror --format json " + path("t2-cy-package") + " " + path("t2-cy-package")})
        CHECK(capture(args) == capture(args));
}

TEST_CASE("cli: environment default for the degree cap")
{
    setenv("RHO_MAX_DEGREE", "4", 1);
    std::string out = capture("cohomology --format json " + path("sphere-S2"));
    unsetenv("RHO_MAX_DEGREE");
    auto j = nlohmann::json::parse(out);
    CHECK(j["max_degree"] == 4);
    CHECK(j["dims"].size() == 5);
}
