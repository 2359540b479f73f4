#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "bellgeom/io.hpp"
#include "bellgeom/zoo.hpp"

using namespace bellgeom;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

fs::path workdir() {
    static fs::path d = [] {
        auto p = fs::temp_directory_path() / "bellgeom_cli_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return d;
}

Run cli(const std::string& args) {
    auto out = workdir() / "stdout.txt";
    std::string cmd = "cd '" + workdir().string() + "' && '" BELLGEOM_CLI "' " + args + " > '" + out.string() +
                      "' 2> /dev/null";
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

}  // namespace

TEST_CASE("behaviour and functional JSON roundtrip") {
    for (auto n : {"pCHSH", "hardy", "PR"}) {
        auto p = zoo_behaviour(n);
        auto back = behaviour_from_json(json::parse(to_json(p).dump()));
        CHECK(back.scenario == p.scenario);
        CHECK(max_abs_diff(back, p) == 0);
        auto viac = behaviour_from_json(json::parse(to_json(prob_to_corr(p)).dump()));
        CHECK(max_abs_diff(viac, p) < 1e-15);
    }
    for (auto n : {"B2", "B6", "Mermin"}) {
        auto f = zoo_functional(n);
        auto j = to_json(f);
        auto g = functional_from_json(j);
        CHECK((g.g - f.g).cwiseAbs().maxCoeff() == 0);
        j.erase("g");
        auto h = functional_from_json(j);
        CHECK((h.g - f.g).cwiseAbs().maxCoeff() < 1e-15);
    }
    // the 2222 correlator layout is the 3 x 3 table [1, B0, B1; A0, A0B0, A0B1; A1, A1B0, A1B1]
    auto t = to_json(prob_to_corr(zoo_behaviour("pCHSH")))["correlators"];
    REQUIRE(t.size() == 3);
    CHECK(t[0][0].get<double>() == 1);
    CHECK(t[2][2].get<double>() == doctest::Approx(-1 / std::sqrt(2.0)));

    auto bad = json::parse(R"({"scenario": {"inputs": [2, 2]}, "p": [[0.5, 0.5, 0, 0]]})");
    CHECK_THROWS_AS(behaviour_from_json(bad), std::invalid_argument);
    auto unnorm = to_json(zoo_behaviour("P0"));
    unnorm["p"][0][0] = 0.9;
    CHECK_THROWS_AS(behaviour_from_json(unnorm), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"inputs": [2, 2], "outputs": [3, 2]})")), std::invalid_argument);
    CHECK(scenario_from_json(json("2222")) == scenario_2222());
}

TEST_CASE("cli bounds and exit codes") {
    auto r = cli("bounds --functional zoo:B1 --json");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["beta_L"].get<double>() == 2);
    CHECK(j["beta_NS"].get<double>() == 4);
    CHECK(std::abs(j["beta_Q_upper"].get<double>() - 2 * std::sqrt(2.0)) < 1e-9);
    CHECK(j["beta_Q_lower"].get<double>() >= 2.828427);

    CHECK(cli("bounds --functional zoo:NOPE").code == 2);
    CHECK(cli("bounds --functional zoo:B1 --bogus").code == 2);
    CHECK(cli("bounds").code == 2);
    CHECK(cli("bounds --functional missing.json").code == 2);
    CHECK(cli("bounds --functional zoo:B1 --level 7").code == 2);

    // a functional from a file
    std::ofstream(workdir() / "f.json") << to_json(zoo_functional("B5")).dump();
    auto fr = cli("bounds --functional f.json --json");
    REQUIRE(fr.code == 0);
    CHECK(json::parse(fr.out)["beta_L"].get<double>() == 2);
}

TEST_CASE("cli reports are reproducible and rounded") {
    auto a = cli("classify --functional zoo:B2 --functional \"zoo:B3(0.5,0.9)\" --seed 4 --restarts 16 --json");
    auto b = cli("classify --functional zoo:B2 --functional \"zoo:B3(0.5,0.9)\" --seed 4 --restarts 16 --json");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j["reports"][0]["class"] == "2a");
    CHECK(j["reports"][1]["class"] == "2b");
    // 12 significant digits
    CHECK(a.out.find("5.65685424949") != std::string::npos);
    CHECK(a.out.find("5.656854249492") == std::string::npos);
}

TEST_CASE("cli certify, zoo and tripartite") {
    auto h = cli("certify hardy-nonexposed --json");
    REQUIRE(h.code == 0);
    auto hj = json::parse(h.out);
    CHECK(hj["primal"].get<double>() == 1);
    CHECK(hj["dual_replay_ok"].get<bool>());

    auto z = cli("zoo list --json");
    REQUIRE(z.code == 0);
    CHECK(json::parse(z.out).size() == zoo_names().size());
    auto s = cli("zoo show B1 --json");
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["bounds"]["beta_L"].get<double>() == 2);
    CHECK(cli("zoo show nothing").code == 2);

    auto m = cli("tripartite mermin --json");
    REQUIRE(m.code == 0);
    CHECK(json::parse(m.out)["class"] == "3a");
    auto w = cli("tripartite ww-face --samples 8 --json");
    REQUIRE(w.code == 0);
    auto wj = json::parse(w.out);
    CHECK(wj["points"].size() == 8);
    CHECK(wj["family"].size() == 8);
    CHECK(cli("tripartite modulated --json").code == 0);
}

TEST_CASE("cli slice writes figure, csv and report") {
    auto r = cli("slice --preset fig5 --out fig5.svg --json");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(workdir() / "fig5.svg"));
    CHECK(fs::exists(workdir() / "fig5.csv"));
    CHECK(fs::exists(workdir() / "fig5.report.json"));
    auto j = json::parse(r.out);
    bool join = false;
    for (auto& f : j["features"])
        if (f["type"] == "smooth-join" && std::abs(f["point"][0].get<double>() - 0.5) < 1e-3 &&
            std::abs(f["point"][1].get<double>() + 1) < 1e-3)
            join = true;
    CHECK(join);

    auto custom = cli("slice --center zoo:P0 --dir1 zoo:PR --dir2 zoo:PR3 --res 36 --out s.csv");
    CHECK(custom.code == 0);
    CHECK(cli("slice --center zoo:PR --dir1 zoo:PR3 --dir2 zoo:PR2 --res 36").code == 2);
    CHECK(cli("slice --preset fig2 --center zoo:P0").code == 2);
    CHECK(cli("slice --preset nothing").code == 2);
    CHECK(cli("project --f1 zoo:B1 --f2 zoo:B1 --res 36").code == 2);
}

TEST_CASE("cli strict mode exits 3 on an undecided classification") {
    // a relaxation level too low to close the sandwich for B2 leaves it undecided
    auto r = cli("classify --functional zoo:B2 --level 1 --restarts 8");
    auto s = cli("classify --functional zoo:B2 --level 1 --restarts 8 --strict");
    CHECK(r.code == 0);
    CHECK(r.out.find("undecided") != std::string::npos);
    CHECK(s.code == 3);
    CHECK(cli("classify --functional zoo:B1 --strict").code == 0);
}
