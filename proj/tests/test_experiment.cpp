#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "sepbound/experiment.hpp"
#include "sepbound/report.hpp"

using namespace sepbound;
namespace fs = std::filesystem;

namespace {

std::string error_of(const ExperimentConfig& c) {
    try {
        validate(c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sepbound_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string err;
};

Run cli(const std::string& args, const fs::path& dir) {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(SEPBOUND_CLI) + " " + args + " > " + (dir / "stdout.txt").string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

}  // namespace

TEST_CASE("parse_command round trip") {
    for (Command c : {Command::bounds, Command::gap, Command::fig3, Command::fig4, Command::fig5,
                      Command::sweep}) {
        CHECK(parse_command(command_name(c)) == c);
    }
    CHECK_FALSE(parse_command("fig6").has_value());
}

TEST_CASE("validate names missing and extra fields") {
    ExperimentConfig c;
    c.command = Command::bounds;
    CHECK(error_of(c) == "bounds: missing fields [rates]");
    c.rates = std::vector<double>{2.0, 1.0};
    CHECK(error_of(c).empty());
    c.noises = std::vector<double>{1.0, 2.0};
    c.power = 1.0;
    CHECK(error_of(c) == "bounds: extra fields [noises, power]");

    ExperimentConfig s;
    s.command = Command::sweep;
    s.receiver_counts = std::vector<int>{2};
    CHECK(error_of(s) == "sweep: missing fields [noises, rates] extra fields [receivers]");

    ExperimentConfig f;
    f.command = Command::fig3;
    CHECK(error_of(f).empty());
}

TEST_CASE("SnrRange") {
    CHECK(SnrRange{}.values().size() == 81);
    CHECK(SnrRange{0.0, 1.0, 0.1}.values().size() == 11);
    CHECK(SnrRange{0.0, 1.0, 0.1}.values().back() == doctest::Approx(1.0));
    CHECK(SnrRange{5.0, 5.0, 1.0}.values() == std::vector<double>{5.0});
    CHECK_THROWS_AS((SnrRange{1.0, 0.0, 1.0}.values()), ConfigError);
    CHECK_THROWS_AS((SnrRange{0.0, 1.0, 0.0}.values()), ConfigError);
}

TEST_CASE("resolve fills defaults and checks domains") {
    ExperimentConfig c;
    c.command = Command::fig5;
    const ExperimentConfig r = resolve(c);
    CHECK(r.receiver_counts->size() == 63);
    CHECK(*r.capacity_ratio == 8.0);
    CHECK(*r.geometric_mean_bits == 1.0);
    CHECK(*r.power == 1.0);

    c.receiver_counts = std::vector<int>{1};
    CHECK_THROWS_AS(resolve(c), ConfigError);

    ExperimentConfig g;
    g.command = Command::fig3;
    g.noise_ratios = std::vector<double>{1.5};
    CHECK_THROWS_AS(resolve(g), ConfigError);
}

TEST_CASE("run_bounds") {
    ExperimentConfig c;
    c.command = Command::bounds;
    c.rates = std::vector<double>{4.0, 2.0, 1.0};
    SweepTable t = run(c);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][t.column("T")] == 3.0);
    CHECK(t.rows[0][t.column("naive")] == 3.0);
    CHECK(t.rows[0][t.column("refined")] == doctest::Approx(2.0));
    CHECK(t.rows[0][t.column("worst_case")] == doctest::Approx(2.0));
    CHECK_THROWS_AS(t.column("combined"), ValidationError);

    c.capacities = std::vector<double>{8.0, 4.0, 2.0};  // proportional: the refined factor again
    t = run(c);
    CHECK(t.rows[0][t.column("combined")] == doctest::Approx(2.0));

    c.capacities = std::vector<double>{4.0, 2.0};
    CHECK_THROWS_AS(run(c), ValidationError);
}

TEST_CASE("run_gap") {
    ExperimentConfig c;
    c.command = Command::gap;
    c.noises = std::vector<double>{0.5, 1.0};
    const SweepTable t = run(c);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][t.column("gap_thm4_bits")] == doctest::Approx(0.32192809488736235));
    CHECK(t.rows[0][t.column("gap_uniform_backoff_bits")] == doctest::Approx(0.32192809488736235));
    CHECK(t.rows[0][t.column("corollary_log2T")] == 1.0);
}

TEST_CASE("figure drivers produce complete tables") {
    ExperimentConfig f3;
    f3.command = Command::fig3;
    f3.snr_db_range = SnrRange{-10.0, 10.0, 10.0};
    f3.noise_ratios = std::vector<double>{0.1, 0.5};
    const SweepTable t3 = run(f3);
    CHECK(t3.rows.size() == 6);
    CHECK(t3.series_column == "noise_ratio");
    t3.check();
    for (const auto& row : t3.rows) {
        CHECK(row[t3.column("ratio_time_sharing")] <= row[t3.column("ratio_optimal_separation")] + 1e-9);
    }

    ExperimentConfig f5;
    f5.command = Command::fig5;
    f5.receiver_counts = std::vector<int>{2, 8};
    const SweepTable t5 = run(f5);
    REQUIRE(t5.rows.size() == 2);
    t5.check();
    CHECK(t5.rows[0][t5.column("ratio_two_dof")] ==
          doctest::Approx(t5.rows[0][t5.column("ratio_optimal_separation")]).epsilon(1e-6));

    ExperimentConfig f4;
    f4.command = Command::fig4;
    f4.snr_db_range = SnrRange{0.0, 20.0, 10.0};
    const SweepTable t4 = run(f4);
    t4.check();
    for (const auto& row : t4.rows) {
        CHECK(row[t4.column("gap_thm4_bits")] < row[t4.column("corollary_log2T")]);
    }
}

TEST_CASE("geometric_capacities") {
    const CapacityProfile c = geometric_capacities(3, 4.0, 1.0);
    CHECK(c[0] == doctest::Approx(2.0));
    CHECK(c[1] == doctest::Approx(1.0));
    CHECK(c[2] == doctest::Approx(0.5));
}

TEST_CASE("CSV format") {
    SweepTable t;
    t.header = {"x", "y"};
    t.rows = {{1.0, 1.0 / 3.0}, {-0.0, 1e-20}};
    t.metadata = {{"command", "demo"}, {"note", "two\nlines"}};
    CHECK(to_csv(t) == "# command: demo\n# note: two lines\nx,y\n1,0.333333333333\n0,1e-20\n");

    SweepTable empty;
    empty.header = {"a"};
    CHECK(to_csv(empty) == "a\n");
}

TEST_CASE("CSV is identical for serial and parallel runs") {
    ExperimentConfig c;
    c.command = Command::fig3;
    c.snr_db_range = SnrRange{-20.0, 40.0, 5.0};
    c.jobs = 1;
    const std::string serial = to_csv(run(c));
    c.jobs = 4;
    CHECK(to_csv(run(c)) == serial);
    CHECK(to_csv(run(c)) == serial);
}

TEST_CASE("config JSON round trip, unknown keys and overlay") {
    ExperimentConfig c;
    c.command = Command::fig5;
    c.receiver_counts = std::vector<int>{2, 4};
    c.capacity_ratio = 3.0;
    const ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(back.command == Command::fig5);
    CHECK(*back.receiver_counts == std::vector<int>{2, 4});
    CHECK(*back.capacity_ratio == 3.0);
    CHECK_FALSE(back.power.has_value());
    CHECK(config_to_json(back) == config_to_json(c));

    CHECK_THROWS_AS(config_from_json(R"({"command":"fig5","color":1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("[1,2]"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"receivers":[2]})"), ConfigError);
    CHECK(config_from_json(R"({"receivers":[2]})", Command::fig5).command == Command::fig5);

    ExperimentConfig flags;
    flags.command = Command::fig5;
    flags.capacity_ratio = 5.0;
    const ExperimentConfig merged = overlay(back, flags);
    CHECK(*merged.capacity_ratio == 5.0);
    CHECK(*merged.receiver_counts == std::vector<int>{2, 4});
}

TEST_CASE("emit writes CSV and charts") {
    const fs::path dir = scratch_dir("emit");
    ExperimentConfig c;
    c.command = Command::fig5;
    c.receiver_counts = std::vector<int>{2, 3, 4};
    const SweepTable t = run(c);
    const auto written = emit(t, dir / "fig5.csv", true);
    CHECK(written.size() == 4);
    CHECK(slurp(dir / "fig5.csv") == to_csv(t));
    const std::string svg = slurp(dir / "fig5_ratio_two_dof.svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);

    CHECK_THROWS_AS(emit(t, dir / "missing" / "x.csv", false), IoError);
}

TEST_CASE("CLI exit codes and outputs") {
    const fs::path dir = scratch_dir("cli");

    Run ok = cli("bounds --rates 4,2,1", dir);
    CHECK(ok.code == 0);
    CHECK(slurp(dir / "stdout.txt").find("T,naive,refined") != std::string::npos);

    Run bad = cli("bounds --rates 1,2", dir);
    CHECK(bad.code == 2);
    CHECK(bad.err.find("not non-increasing at index 1") != std::string::npos);

    CHECK(cli("fig3 --rates 1", dir).code == 2);
    CHECK(cli("nonsense", dir).code == 2);
    CHECK(cli("bounds --rates x", dir).code == 2);
    CHECK(cli("fig5 --svg", dir).code == 2);

    Run io = cli("bounds --rates 2,1 --out " + (dir / "no" / "such" / "out.csv").string(), dir);
    CHECK(io.code == 3);
    CHECK(io.err.find("out.csv") != std::string::npos);

    CHECK(cli("fig5 --receivers 2,3 --out " + (dir / "f5.csv").string() + " --svg", dir).code == 0);
    CHECK(fs::exists(dir / "f5.csv"));
    CHECK(fs::exists(dir / "f5_ratio_time_sharing.svg"));

    std::ofstream(dir / "cfg.json") << R"({"command":"gap","noises":[0.5,1.0]})";
    CHECK(cli("--config " + (dir / "cfg.json").string() + " --power 2", dir).code == 0);
    CHECK(slurp(dir / "stdout.txt").find("\"power\":2") != std::string::npos);
}
