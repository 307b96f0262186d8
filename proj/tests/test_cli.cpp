#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "catflat/comon.hpp"
#include "catflat/form_io.hpp"
#include "catflat/rng.hpp"

using namespace catflat;
using nlohmann::ordered_json;

namespace {

struct RunResult {
    int status = -1;
    std::string out; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CATFLAT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

std::string temp_form_path(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path();
    return (dir / ("catflat_test_" + tag + "_" + std::to_string(::getpid()) + ".json")).string();
}

QForm disjoint_block_cubic(unsigned first_var, std::uint64_t seed) {
    Sampler rng(seed);
    WaringExpression<Rationals> w;
    w.degree = 3;
    for (int t = 0; t < 3; ++t) {
        WaringExpression<Rationals>::Summand s;
        s.lambda = mpq_class(1);
        s.linear.assign(6, mpq_class(0));
        for (unsigned v = first_var; v < first_var + 3; ++v)
            s.linear[v] = mpq_class(1 + rng.draw_below(100));
        w.summands.push_back(s);
    }
    return expand(Rationals{}, w, 5, 3);
}

} // namespace

TEST_CASE("comon emits the stable verdict keys in order") {
    const RunResult r = run_cli("comon --n 5 --d 3 --h 4 --seed 7 --output json");
    CHECK(r.status == 0);
    const std::string prefix =
        "{\"n\":5,\"d\":3,\"h\":4,\"branch\":\"UsualFlattenings\",\"threshold\":6,\"k\":2,"
        "\"det_provenance\":\"NotComputed\",\"seed\":7,\"elapsed_ms\":";
    CHECK(r.out.substr(0, prefix.size()) == prefix);

    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j.at("n") == 5);
    CHECK(j.at("seed") == 7);
    CHECK(j.contains("elapsed_ms"));
    CHECK_FALSE(j.contains("minor_mode"));
}

TEST_CASE("comon output agrees with the library") {
    const RunResult r = run_cli("comon --n 5 --d 3 --h 6 --seed 5 --output structured");
    REQUIRE(r.status == 0);
    const ordered_json j = ordered_json::parse(r.out);
    const ComonVerdict v = comon_check(5, 3, 6, Sampler(5));
    CHECK(j.at("branch") == to_string(v.branch));
    CHECK(j.at("det_provenance") == to_string(v.det_provenance));
    CHECK(j.at("threshold") == v.threshold);
    CHECK(j.at("k") == v.k);
    CHECK(j.at("seed") == 5);
}

TEST_CASE("replays are byte-identical apart from timing") {
    const std::string args = "comon --n 5 --d 3 --h 6 --seed 11 --output json";
    ordered_json a = ordered_json::parse(run_cli(args).out);
    ordered_json b = ordered_json::parse(run_cli(args).out);
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("the random-minor flag is reported distinctly") {
    const RunResult r =
        run_cli("comon --n 5 --d 3 --h 6 --seed 3 --random-minor --output json");
    REQUIRE(r.status == 0);
    CHECK(ordered_json::parse(r.out).at("minor_mode") == "RandomRowsCols");
}

TEST_CASE("human verdicts carry the threshold sentence") {
    const RunResult r = run_cli("comon --n 5 --d 3 --h 4 --seed 1");
    CHECK(r.status == 0);
    CHECK(r.out.find("Lowest rank for which the usual flattenings method does not work = 6") !=
          std::string::npos);
    CHECK(r.out.find("UsualFlattenings") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with status 2") {
    CHECK(run_cli("comon --n 5 --d 3").status == 2);              // missing --h
    CHECK(run_cli("comon --n 5 --d 3 --h 4 --bogus").status == 2);
    CHECK(run_cli("").status == 2);                               // subcommand required
    CHECK(run_cli("comon --n 0 --d 3 --h 1 --seed 1").status == 2);
    CHECK(run_cli("osculate --n 3 --d 4 --s 2 --seed 1").status == 2);

    const RunResult bad_field = run_cli("comon --n 5 --d 3 --h 4 --seed 1 --field fp:91");
    CHECK(bad_field.status == 2);
    CHECK(bad_field.out.find("error:") != std::string::npos);
}

TEST_CASE("help is on --help and exits zero") {
    const RunResult top = run_cli("--help");
    CHECK(top.status == 0);
    CHECK(top.out.find("osculate") != std::string::npos);

    const RunResult sub = run_cli("comon --help");
    CHECK(sub.status == 0);
    CHECK(sub.out.find("--seed") != std::string::npos);
    // --h stays available as the rank parameter.
    CHECK(run_cli("comon --n 5 --d 3 --h 4 --seed 1 --output json").status == 0);
}

TEST_CASE("sweep streams one record per n in increasing order") {
    const RunResult r = run_cli("sweep --d 3 --n 2..4 --seed 9 --output json");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    const Sampler base(9);
    for (std::size_t i = 0; i < 3; ++i) {
        const unsigned n = 2 + static_cast<unsigned>(i);
        const ordered_json j = ordered_json::parse(lines[i]);
        CHECK(j.at("n") == n);
        CHECK(j.at("h") == binomial(n + 1, n));
        CHECK(j.at("branch") == "HoldsNewMethod");
        CHECK(j.at("det_provenance") == "ModularNonzero"); // default sweep field is modular
        CHECK(j.at("seed") == base.derive(n).seed());
    }

    CHECK(run_cli("sweep --d 4 --n 2..4 --seed 9").status == 2); // even degree
    CHECK(run_cli("sweep --d 3 --n 4..2 --seed 9").status == 2);
}

TEST_CASE("catalecticant renders a form file") {
    const std::string path = temp_form_path("fermat");
    QForm fermat(Rationals{}, 2, 3);
    fermat.add_term({3, 0}, mpq_class(1));
    fermat.add_term({0, 3}, mpq_class(1));
    write_form_file(path, fermat);

    const RunResult r = run_cli("catalecticant --form " + path + " --s 1 --seed 3 --output json");
    REQUIRE(r.status == 0);
    const std::string expect =
        "{\"rows\":2,\"cols\":3,\"entries\":[[\"3\",\"0\",\"0\"],[\"0\",\"0\",\"3\"]],"
        "\"order\":1,\"rank\":2,\"seed\":3}";
    CHECK(lines_of(r.out).front() == expect);

    const RunResult human = run_cli("catalecticant --form " + path + " --s 1 --seed 3");
    CHECK(human.status == 0);
    CHECK(human.out.find("rank = 2") != std::string::npos);
    std::filesystem::remove(path);

    CHECK(run_cli("catalecticant --form /nonexistent.json --s 1 --seed 1").status == 2);
}

TEST_CASE("strassen certifies disjoint rank-3 blocks from files") {
    const std::string fpath = temp_form_path("f3");
    const std::string gpath = temp_form_path("g3");
    write_form_file(fpath, disjoint_block_cubic(0, 21));
    write_form_file(gpath, disjoint_block_cubic(3, 22));

    const RunResult r = run_cli("strassen --f " + fpath + " --g " + gpath +
                                " --s 1 --rank-f 3 --rank-g 3 --seed 4 --output json");
    REQUIRE(r.status == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j.at("s") == 1);
    CHECK(j.at("rank_f") == 3);
    CHECK(j.at("rank_g") == 3);
    CHECK(j.at("rank_sum") == 6);
    CHECK(j.at("additivity_certified") == true);
    CHECK(j.at("seed") == 4);

    // Same file on both sides: the variable blocks collide.
    CHECK(run_cli("strassen --f " + fpath + " --g " + fpath +
                  " --s 1 --rank-f 3 --rank-g 3 --seed 4").status == 2);
    std::filesystem::remove(fpath);
    std::filesystem::remove(gpath);
}

TEST_CASE("hankel accepts coordinates or a form file, not both") {
    const RunResult r = run_cli("hankel --z 1,0,0,1 --seed 2 --output json");
    REQUIRE(r.status == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j.at("d") == 3);
    CHECK(j.at("rows") == 3);
    CHECK(j.at("cols") == 2);
    CHECK(j.at("rank") == 2);
    CHECK(j.at("z") == ordered_json::array({"1", "0", "0", "1"}));

    const std::string path = temp_form_path("hankel");
    QForm fermat(Rationals{}, 2, 3);
    fermat.add_term({3, 0}, mpq_class(1));
    fermat.add_term({0, 3}, mpq_class(1));
    write_form_file(path, fermat);
    const RunResult from_file = run_cli("hankel --form " + path + " --seed 2 --output json");
    REQUIRE(from_file.status == 0);
    CHECK(ordered_json::parse(from_file.out).at("z") == j.at("z"));

    CHECK(run_cli("hankel --z 1,0 --form " + path + " --seed 2").status == 2);
    CHECK(run_cli("hankel --seed 2").status == 2); // neither source given
    std::filesystem::remove(path);
}

TEST_CASE("lift applies the coordinate law") {
    const RunResult r = run_cli("lift --z 1,2,3 --seed 6 --output json");
    REQUIRE(r.status == 0);
    const ordered_json j = ordered_json::parse(r.out);
    CHECK(j.at("d") == 3);
    CHECK(j.at("z") == ordered_json::array({"1", "4/3", "1", "0"}));
    CHECK(j.at("seed") == 6);

    const RunResult human = run_cli("lift --z 1,2,3 --seed 6");
    CHECK(human.status == 0);
    CHECK(human.out.find("[1, 4/3, 1, 0]") != std::string::npos);
}

TEST_CASE("osculate reports containment and witnesses") {
    const RunResult inside = run_cli("osculate --n 3 --d 3 --s 2 --trials 5 --seed 1 --output json");
    REQUIRE(inside.status == 0);
    const ordered_json ji = ordered_json::parse(inside.out);
    CHECK(ji.at("outcome") == "ContainedProbabilistically");
    CHECK(ji.at("zero_trials") == 5);
    CHECK(ji.at("matrix_size") == 10);
    CHECK(ji.at("prime") == kDefaultPrime31);
    CHECK_FALSE(ji.contains("witness_seed"));

    const RunResult outside = run_cli("osculate --n 2 --d 3 --s 2 --trials 1 --seed 1 --output json");
    REQUIRE(outside.status == 0);
    const ordered_json jo = ordered_json::parse(outside.out);
    CHECK(jo.at("outcome") == "NotContained");
    CHECK(jo.at("zero_trials") == 0);
    CHECK(jo.at("witness_seed") == Sampler(1).derive(0).seed());

    CHECK(run_cli("osculate --n 2 --d 3 --s 2 --prime 101 --seed 1").status == 2);
}

TEST_CASE("unseeded runs draw and echo fresh entropy") {
    const ordered_json a = ordered_json::parse(run_cli("comon --n 5 --d 3 --h 4 --output json").out);
    const ordered_json b = ordered_json::parse(run_cli("comon --n 5 --d 3 --h 4 --output json").out);
    CHECK(a.contains("seed"));
    CHECK(b.contains("seed"));
    CHECK(a.at("seed") != b.at("seed"));
}

TEST_CASE("form files roundtrip canonically") {
    Sampler rng(888);
    const QForm f = random_dense_form(Rationals{}, rng, 2, 3);
    const std::string text = write_form(f);
    std::istringstream in(text);
    const QForm back = read_form(in);
    CHECK(back == f);
    CHECK(write_form(back) == text);

    const std::string path = temp_form_path("roundtrip");
    write_form_file(path, f);
    CHECK(read_form_file(path) == f);
    std::filesystem::remove(path);
}

TEST_CASE("malformed form files are rejected") {
    const auto rejects = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_form(in), error);
    };
    rejects("not json at all");
    rejects("[1,2,3]");
    rejects("{\"nvars\":2,\"degree\":3}");
    rejects("{\"nvars\":2,\"degree\":3,\"terms\":[{\"exponents\":[3,0]}]}");
    rejects("{\"nvars\":2,\"degree\":3,\"terms\":[{\"exponents\":[3,0],\"coeff\":\"x\"}]}");
    rejects("{\"nvars\":2,\"degree\":3,\"terms\":[{\"exponents\":[2,0],\"coeff\":\"1\"}]}");
    rejects("{\"nvars\":2,\"degree\":3,\"terms\":[{\"exponents\":[1,1,1],\"coeff\":\"1\"}]}");
}
