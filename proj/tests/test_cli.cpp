#include "jja/config.hpp"
#include "jja/output.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string cli_binary() {
    const char* env = std::getenv("JJA_CLI_BIN");
    REQUIRE_MESSAGE(env != nullptr, "JJA_CLI_BIN must point at the jja binary (set by ctest)");
    return env;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("jja_cli_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run(const std::string& args, std::string* output = nullptr) {
    const fs::path log = fs::temp_directory_path() / "jja_cli_test.log";
    const std::string cmd = cli_binary() + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    if (output) *output = read_file(log);
    return WEXITSTATUS(raw);
}

std::vector<std::vector<std::string>> parse_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

const char* kModesConfig = "topology = chain\nN = 2\nIc = 0.5e-6\nC = 1e-12\nib = 0\nK = 1\n";

} // namespace

TEST_CASE("modes subcommand emits the closed-form frequency ratio") {
    const fs::path dir = fresh_dir("modes");
    write_file(dir / "modes.cfg", kModesConfig);
    const int rc = run("modes -c " + (dir / "modes.cfg").string() + " -o " + dir.string());
    CHECK(rc == 0);
    const auto rows = parse_csv(dir / "modes.csv");
    REQUIRE(rows.size() == 3);
    const double nu0 = std::stod(rows[1][1]);
    const double nu1 = std::stod(rows[2][1]);
    CHECK(nu1 / nu0 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(fs::exists(dir / "com_quality.json"));
    CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("manifest records every resolved parameter") {
    const fs::path dir = fresh_dir("manifest");
    // Only the required keys in the file; defaults must still land in the manifest.
    write_file(dir / "m.cfg", "N = 2\nIc = 0.5e-6\nC = 1e-12\n");
    const std::string extra = " --set qubit_M=10e-12 --set qubit_IcQ=0.1e-6";
    CHECK(run("modes -c " + (dir / "m.cfg").string() + " -o " + dir.string() + extra) == 0);
    const std::string manifest = read_file(dir / "manifest.json");
    for (const char* key : {"\"N\"", "\"Ic\"", "\"C\"", "\"ib\"", "\"K\"", "\"margin\"",
                            "\"g_over_2pi\"", "\"topology\"", "\"unit_system\"",
                            "\"disorder_vertical_pct\"", "\"seed\"", "\"tool\""})
        CHECK(manifest.find(key) != std::string::npos);
    // The computed qubit coupling appears alongside the scale set by hand.
    const std::string quality = read_file(dir / "com_quality.json");
    CHECK(quality.find("g_computed_over_2pi_hz") != std::string::npos);
}

TEST_CASE("qed subcommand: resonant P_e returns to one at t = pi/g") {
    const fs::path dir = fresh_dir("qed");
    write_file(dir / "qed.cfg",
               "Bz = 1.0\nnu0 = 1.0\ng = 0.05\nn_max = 4\n"
               "t_max = 125.66370614359172\nt_steps = 201\n"); // two Rabi periods
    const int rc = run("qed -c " + (dir / "qed.cfg").string() + " -o " + dir.string());
    CHECK(rc == 0);
    const auto rows = parse_csv(dir / "trajectory.csv");
    REQUIRE(rows.size() == 202);
    // First return to P_e = 1 happens halfway through the grid.
    int first_return = -1;
    for (std::size_t k = 2; k < rows.size(); ++k) {
        if (std::stod(rows[k][1]) > 1.0 - 1e-9) {
            first_return = static_cast<int>(k);
            break;
        }
    }
    CHECK(first_return == 101); // t = pi/g at the grid midpoint
}

TEST_CASE("schema violations exit with code 2 and name the key") {
    const fs::path dir = fresh_dir("schema");
    write_file(dir / "bad.cfg", "Ic = 0.5e-6\nC = 1e-12\n"); // missing N
    std::string output;
    const int rc =
        run("modes -c " + (dir / "bad.cfg").string() + " -o " + dir.string(), &output);
    CHECK(rc == 2);
    CHECK(output.find("'N'") != std::string::npos);

    write_file(dir / "unknown.cfg", std::string(kModesConfig) + "bogus_key = 1\n");
    const int rc2 =
        run("modes -c " + (dir / "unknown.cfg").string() + " -o " + dir.string() + " --force",
            &output);
    CHECK(rc2 == 2);
    CHECK(output.find("bogus_key") != std::string::npos);
}

TEST_CASE("runs are deterministic byte for byte") {
    const fs::path dir1 = fresh_dir("det1");
    const fs::path dir2 = fresh_dir("det2");
    const std::string cfg = std::string(kModesConfig) + "disorder_vertical_pct = 1.0\n";
    write_file(dir1 / "m.cfg", cfg);
    CHECK(run("modes -c " + (dir1 / "m.cfg").string() + " -o " + dir1.string() + " --seed 7") == 0);
    CHECK(run("modes -c " + (dir1 / "m.cfg").string() + " -o " + dir2.string() + " --seed 7") == 0);
    for (const char* name : {"modes.csv", "com_quality.json", "manifest.json"}) {
        CHECK(read_file(dir1 / name) == read_file(dir2 / name));
        CHECK(!read_file(dir1 / name).empty());
    }
    // A different seed draws different disorder.
    const fs::path dir3 = fresh_dir("det3");
    CHECK(run("modes -c " + (dir1 / "m.cfg").string() + " -o " + dir3.string() + " --seed 8") == 0);
    CHECK(read_file(dir1 / "modes.csv") != read_file(dir3 / "modes.csv"));
}

TEST_CASE("overwrite protection requires --force") {
    const fs::path dir = fresh_dir("force");
    write_file(dir / "m.cfg", kModesConfig);
    const std::string base = "modes -c " + (dir / "m.cfg").string() + " -o " + dir.string();
    CHECK(run(base) == 0);
    std::string output;
    CHECK(run(base, &output) == 2);
    CHECK(output.find("overwrite") != std::string::npos);
    CHECK(run(base + " --force") == 0);
}

TEST_CASE("environment variable overrides the output directory") {
    const fs::path dir = fresh_dir("env");
    const fs::path env_dir = fresh_dir("env_target");
    write_file(dir / "m.cfg", kModesConfig);
    const std::string cmd = "JJA_OUTPUT_DIR=" + env_dir.string() + " " + cli_binary() +
                            " modes -c " + (dir / "m.cfg").string() + " > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(env_dir / "modes.csv"));
}

TEST_CASE("plot emission") {
    SUBCASE("CLI emits gnuplot files with series blocks") {
        const fs::path dir = fresh_dir("plot");
        write_file(dir / "h.cfg",
                   "N = 4\nomega = 1.0\nn_max = 2\n"
                   "scan_t_min = 0.5\nscan_t_max = 1.0\nscan_t_steps = 2\n"
                   "scan_g_min = 0\nscan_g_max = 0.5\nscan_g_steps = 2\n");
        const int rc = run("holstein scan -c " + (dir / "h.cfg").string() + " -o " +
                           dir.string() + " --plot");
        CHECK(rc == 0);
        const std::string dat = read_file(dir / "scan.dat");
        CHECK(dat.find("# g_over_omega S_pi") != std::string::npos);
        CHECK(dat.find("\n\n\n") != std::string::npos); // two t_over_omega blocks
        CHECK(read_file(dir / "scan.gp").find("plot") != std::string::npos);
    }
    SUBCASE("empty table still yields a valid data file") {
        const fs::path dir = fresh_dir("plot_empty");
        jja::Table empty;
        empty.columns = {"x", "y"};
        jja::emit_plot_data((dir / "empty").string(), empty, jja::PlotSpec{"x", {"y"}, ""},
                            false);
        CHECK(read_file(dir / "empty.dat") == "# x y\n");
    }
    SUBCASE("unknown plot column is a config error") {
        jja::Table t;
        t.columns = {"x"};
        CHECK_THROWS_AS(
            jja::emit_plot_data("/tmp/jja_cli_test_badcol", t, jja::PlotSpec{"nope", {}, ""}, true),
            jja::ConfigError);
    }
}

TEST_CASE("config parser diagnostics") {
    using jja::Config;
    CHECK_THROWS_WITH_AS(Config::from_string("key value\n", "cfg"),
                         doctest::Contains("cfg:1"), jja::ConfigError);
    CHECK_THROWS_WITH_AS(Config::from_string("a = 1\na = 2\n", "cfg"),
                         doctest::Contains("duplicate"), jja::ConfigError);
    const Config cfg = Config::from_string("x = 2.5 # trailing comment\nname = run1\n");
    CHECK(cfg.get_double("x") == 2.5);
    CHECK(cfg.get_string("name") == "run1");
    CHECK_THROWS_AS(cfg.get_int("x"), jja::ConfigError);
    CHECK_THROWS_AS(cfg.get_double("missing"), jja::ConfigError);
}
