#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fnlslab/checkpoint.hpp"
#include "fnlslab/config.hpp"
#include "fnlslab/report.hpp"
#include "fnlslab/sampling.hpp"
#include "fnlslab/scenarios.hpp"

using namespace fnls;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

const char* kNormsConfig = R"(
[experiment]
scenario = norms
seed = 7
out_dir = .

[grid]
n = 2
L = 4
M = 64

[equation]
kind = power
beta = 1.5
alpha = 1.0

[datum]
kind = gaussian
amplitude = 1.0
width = 1.0

[norms]
p_list = 2, 3
samples = 12
embedding_p = 4
)";

}  // namespace

TEST_CASE("config parsing") {
    ExperimentConfig cfg = parse_config_text(kNormsConfig);
    CHECK(cfg.scenario == "norms");
    CHECK(cfg.seed == 7);
    CHECK(cfg.get_int("grid", "m", 0) == 64);
    CHECK(cfg.get_num("equation", "beta", 0.0) == 1.5);
    CHECK(cfg.get_list("norms", "p_list", {}).size() == 2);
    CHECK(cfg.hash == fnv1a_hex(cfg.source_text));
    CHECK(cfg.get_str("missing", "key", "dflt") == "dflt");

    CHECK_THROWS(parse_config_text("[x]\nkey_without_value\n"));
    CHECK_THROWS(parse_config_text("key = outside_section\n"));
    CHECK_THROWS(parse_config_text("[unterminated\n"));
}

TEST_CASE("config validation names the condition") {
    std::string bad(kNormsConfig);
    bad.replace(bad.find("scenario = norms"), 16, "scenario = split");
    bad.replace(bad.find("alpha = 1.0"), 11, "alpha = 2.0");
    ExperimentConfig cfg = parse_config_text(bad);
    try {
        validate_config(cfg);
        FAIL("expected validation to throw");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("mass-subcritical") != std::string::npos);
    }

    std::string bad2(kNormsConfig);
    bad2.replace(bad2.find("scenario = norms"), 16, "scenario = nosuch");
    CHECK_THROWS(validate_config(parse_config_text(bad2)));
}

TEST_CASE("scenario run emits deterministic artifacts") {
    ExperimentConfig cfg = parse_config_text(kNormsConfig);
    fs::path dir1 = fs::temp_directory_path() / "fnls_io_t1";
    fs::path dir2 = fs::temp_directory_path() / "fnls_io_t8";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    RunOverrides o1;
    o1.out_dir = dir1.string();
    o1.threads = 1;
    RunOverrides o2;
    o2.out_dir = dir2.string();
    o2.threads = 8;
    CHECK(run_scenario(cfg, o1) == 0);
    CHECK(run_scenario(cfg, o2) == 0);

    std::string a = slurp(dir1 / "results.json");
    std::string b = slurp(dir2 / "results.json");
    CHECK(!a.empty());
    CHECK(a == b);  // byte-identical across thread counts
}

TEST_CASE("evolve scenario writes RFC-4180 series") {
    std::string text = R"(
[experiment]
scenario = evolve
seed = 3
[grid]
n = 2
L = 4
M = 32
[equation]
kind = power
beta = 1.5
alpha = 1.0
[datum]
kind = gaussian
width = 1.0
[evolve]
method = split_step
horizon = 0.05
dt = 0.005
emit_checkpoints = true
)";
    ExperimentConfig cfg = parse_config_text(text);
    fs::path dir = fs::temp_directory_path() / "fnls_io_evolve";
    fs::remove_all(dir);
    RunOverrides o;
    o.out_dir = dir.string();
    CHECK(run_scenario(cfg, o) == 0);
    std::string csv = slurp(dir / "series.csv");
    CHECK(csv.rfind("t,mass,target_lp", 0) == 0);
    CHECK(csv.find("\r\n") != std::string::npos);
    // checkpoint round-trips
    Trajectory traj = load_trajectory((dir / "trajectory.fnls").string());
    CHECK(traj.size() >= 2);
    CHECK(traj.states.back().grid->points() == 32);
}

TEST_CASE("checkpoint container round trip") {
    auto g = make_grid(2, 4.0, 32);
    Field f = random_band_limited(g, 5, 0, 0.5);
    f.time_tag = 0.75;
    fs::path path = fs::temp_directory_path() / "fnls_field.fnls";
    save_field(f, path.string());
    Field back = load_field(path.string());
    CHECK(back.time_tag == 0.75);
    CHECK(back.grid->half_extent() == 4.0);
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(back.values[i] == f.values[i]);

    Trajectory traj;
    traj.append(0.0, f);
    traj.append(0.5, scaled(f, cplx(0.0, 1.0)));
    fs::path tpath = fs::temp_directory_path() / "fnls_traj.fnls";
    save_trajectory(traj, tpath.string());
    Trajectory tback = load_trajectory(tpath.string());
    REQUIRE(tback.size() == 2);
    CHECK(tback.times[1] == 0.5);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(tback.states[1].values[i] == traj.states[1].values[i]);

    CHECK_THROWS(load_field(tpath.string()));  // magic mismatch
}

TEST_CASE("CSV quoting") {
    fs::path path = fs::temp_directory_path() / "fnls_quote.csv";
    write_csv(path.string(), {"a", "b"}, {{"1,5", "plain"}, {"say \"hi\"", "x"}});
    std::string text = slurp(path);
    CHECK(text == "a,b\r\n\"1,5\",plain\r\n\"say \"\"hi\"\"\",x\r\n");
}

TEST_CASE("verify scenario returns nonzero on forced failure") {
    // the property suite itself passes; exercise the scenario plumbing
    std::string text = R"(
[experiment]
scenario = verify
seed = 1
[verify]
filter = analysis
)";
    ExperimentConfig cfg = parse_config_text(text);
    fs::path dir = fs::temp_directory_path() / "fnls_io_verify";
    fs::remove_all(dir);
    RunOverrides o;
    o.out_dir = dir.string();
    CHECK(run_scenario(cfg, o) == 0);
    std::string json = slurp(dir / "results.json");
    CHECK(json.find("\"all_pass\"") != std::string::npos);
}
