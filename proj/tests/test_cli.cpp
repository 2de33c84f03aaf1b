// Black-box tests of the command-line tool: spawns the built binary, checks
// exit codes, output files, and the result bundle contract.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "swapsim/results.hpp"
#include "swapsim/version.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
    std::string cmd = std::string("\"") + SWAPSIM_CLI_PATH + "\" " + args + " > /dev/null";
    if (stderr_file.empty())
        cmd += " 2> /dev/null";
    else
        cmd += " 2> \"" + stderr_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

fs::path sandbox(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("swapsim_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::ordered_json desk_json() {
    return nlohmann::ordered_json::parse(slurp(SWAPSIM_DESK_CONFIG));
}

fs::path write_config(const fs::path& dir, const std::string& name,
                      const nlohmann::ordered_json& doc) {
    const fs::path path = dir / name;
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
    return path;
}

const swapsim::NamedTable* find_table(const swapsim::ResultBundle& bundle,
                                      const std::string& name) {
    for (const auto& table : bundle.tables)
        if (table.name == name) return &table;
    return nullptr;
}

const double kLn8 = std::log(8.0);

}  // namespace

TEST_CASE("swap subcommand writes the desk-scale result bundle") {
    const fs::path dir = sandbox("swap");
    const fs::path out = dir / "run";
    REQUIRE(run_cli("swap --config \"" SWAPSIM_DESK_CONFIG "\" --out \"" + out.string() + "\"") ==
            0);

    REQUIRE(fs::exists(out / "results.json"));
    REQUIRE(fs::exists(out / "coincidence.tsv"));
    REQUIRE(fs::exists(out / "schmidt.tsv"));
    CHECK_FALSE(fs::exists(out / "histogram.tsv"));

    const auto bundle = swapsim::parse_results(slurp(out / "results.json"));
    CHECK(bundle.summary.command == "swap");
    CHECK(bundle.summary.path == "ideal");
    CHECK(bundle.summary.post_selected);
    CHECK(std::abs(bundle.summary.success_probability - 0.125) <= 1e-12);
    CHECK(bundle.summary.chi_scale == 1.0);
    CHECK(std::abs(bundle.summary.sum_invariant - 2.1) <= 1e-12);
    CHECK(std::abs(bundle.summary.entanglement_entropy - kLn8) <= 1e-10);
    REQUIRE(bundle.summary.schmidt_coefficients.size() == 8);
    for (const double c : bundle.summary.schmidt_coefficients)
        CHECK(std::abs(c - 1.0 / std::sqrt(8.0)) <= 1e-12);

    CHECK(bundle.provenance.tool_version == std::string(swapsim::kVersion));
    CHECK(bundle.provenance.config_hash.size() == 16);
    CHECK(bundle.provenance.seed == 42);

    const auto* coincidence = find_table(bundle, "coincidence");
    REQUIRE(coincidence != nullptr);
    REQUIRE(coincidence->rows.size() == 64);
    double total = 0.0;
    for (const auto& row : coincidence->rows) total += row[2];
    CHECK(std::abs(total - 1.0) <= 1e-9);
    const auto* schmidt = find_table(bundle, "schmidt");
    REQUIRE(schmidt != nullptr);
    CHECK(schmidt->rows.size() == 8);
}

TEST_CASE("same config and seed produce byte-identical outputs") {
    const fs::path dir = sandbox("determinism");
    for (const char* run : {"a", "b"})
        REQUIRE(run_cli("sample --config \"" SWAPSIM_DESK_CONFIG "\" --out \"" +
                        (dir / run).string() + "\"") == 0);
    for (const char* file : {"results.json", "coincidence.tsv", "schmidt.tsv", "histogram.tsv"}) {
        INFO(file);
        REQUIRE(fs::exists(dir / "a" / file));
        CHECK(slurp(dir / "a" / file) == slurp(dir / "b" / file));
    }

    const auto bundle = swapsim::parse_results(slurp(dir / "a" / "results.json"));
    CHECK(bundle.summary.command == "sample");
    const auto* histogram = find_table(bundle, "histogram");
    REQUIRE(histogram != nullptr);
    REQUIRE(histogram->rows.size() == 64);
    double events = 0.0;
    for (const auto& row : histogram->rows) events += row[2];
    CHECK(events == 8000.0);

    const std::string tsv = slurp(dir / "a" / "histogram.tsv");
    CHECK(tsv.rfind("# table: histogram\n# units:\tarb_omega\tarb_omega\tcount\n", 0) == 0);
}

TEST_CASE("seed, trial, and path flags override the config") {
    const fs::path dir = sandbox("overrides");
    REQUIRE(run_cli("sample --config \"" SWAPSIM_DESK_CONFIG "\" --seed 7 --trials 500 --out \"" +
                    (dir / "s").string() + "\"") == 0);
    const auto sampled = swapsim::parse_results(slurp(dir / "s" / "results.json"));
    CHECK(sampled.provenance.seed == 7);
    const auto* histogram = find_table(sampled, "histogram");
    REQUIRE(histogram != nullptr);
    double events = 0.0;
    for (const auto& row : histogram->rows) events += row[2];
    CHECK(events == 500.0);

    REQUIRE(run_cli("swap --config \"" SWAPSIM_DESK_CONFIG "\" --path physical --out \"" +
                    (dir / "p").string() + "\"") == 0);
    const auto swapped = swapsim::parse_results(slurp(dir / "p" / "results.json"));
    CHECK(swapped.summary.path == "physical");
    CHECK(std::abs(swapped.summary.success_probability - 0.125) <= 1e-12);
    CHECK(swapped.summary.chi_scale == 1.0);
    // the effective config is what gets hashed, so overrides show up
    const auto base = swapsim::parse_results(slurp(dir / "s" / "results.json"));
    CHECK(swapped.provenance.config_hash != base.provenance.config_hash);
}

TEST_CASE("an unreachable window exits 2 and records the empty outcome") {
    const fs::path dir = sandbox("empty");
    auto doc = desk_json();
    doc["measurement"]["window_omega"] = 50.0;
    const fs::path config = write_config(dir, "far.json", doc);

    const fs::path note = dir / "stderr.txt";
    REQUIRE(run_cli("sample --config \"" + config.string() + "\" --out \"" +
                    (dir / "out").string() + "\"", note) == 2);
    CHECK(slurp(note).find("no successful post-selection") != std::string::npos);

    const auto bundle = swapsim::parse_results(slurp(dir / "out" / "results.json"));
    CHECK_FALSE(bundle.summary.post_selected);
    CHECK(bundle.summary.success_probability == 0.0);
    CHECK(bundle.summary.schmidt_coefficients.empty());

    REQUIRE(run_cli("swap --config \"" + config.string() + "\" --out \"" +
                    (dir / "out2").string() + "\"") == 2);
}

TEST_CASE("usage and config errors exit 1 with a key-path diagnostic") {
    const fs::path dir = sandbox("errors");

    CHECK(run_cli("swap --config \"" + (dir / "missing.json").string() + "\" --out \"" +
                  (dir / "o1").string() + "\"") == 1);
    CHECK(run_cli("swap") == 1);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("sample --config \"" SWAPSIM_DESK_CONFIG "\" --trials 0 --out \"" +
                  (dir / "o2").string() + "\"") == 1);

    auto unknown = desk_json();
    unknown["detector"] = nlohmann::ordered_json::object();
    const fs::path unknown_path = write_config(dir, "unknown.json", unknown);
    const fs::path note = dir / "stderr.txt";
    CHECK(run_cli("swap --config \"" + unknown_path.string() + "\" --out \"" +
                  (dir / "o3").string() + "\"", note) == 1);
    CHECK(slurp(note).find("config error at 'detector'") != std::string::npos);

    auto negative = desk_json();
    negative["measurement"]["window_omega"] = -1.0;
    const fs::path negative_path = write_config(dir, "negative.json", negative);
    CHECK(run_cli("swap --config \"" + negative_path.string() + "\" --out \"" +
                  (dir / "o4").string() + "\"", note) == 1);
    CHECK(slurp(note).find("measurement.window_omega") != std::string::npos);
}

TEST_CASE("outputs are write-once") {
    const fs::path dir = sandbox("write_once");
    const fs::path out = dir / "run";
    REQUIRE(run_cli("swap --config \"" SWAPSIM_DESK_CONFIG "\" --out \"" + out.string() + "\"") ==
            0);
    const std::string before = slurp(out / "results.json");

    const fs::path note = dir / "stderr.txt";
    CHECK(run_cli("swap --config \"" SWAPSIM_DESK_CONFIG "\" --out \"" + out.string() + "\"",
                  note) == 1);
    CHECK(slurp(note).find("write-once") != std::string::npos);
    CHECK(slurp(out / "results.json") == before);
}

TEST_CASE("biphoton subcommand reports the source spectra") {
    const fs::path dir = sandbox("biphoton");
    const fs::path out = dir / "run";
    REQUIRE(run_cli("biphoton --config \"" SWAPSIM_DESK_CONFIG "\" --out \"" + out.string() +
                    "\"") == 0);
    for (const char* file :
         {"results.json", "spectrum_I.tsv", "spectrum_II.tsv", "schmidt_I.tsv", "schmidt_II.tsv"})
        REQUIRE(fs::exists(out / file));

    const auto bundle = swapsim::parse_results(slurp(out / "results.json"));
    CHECK(bundle.summary.command == "biphoton");
    CHECK(std::abs(bundle.summary.entanglement_entropy - kLn8) <= 1e-10);
    const auto* entropies = find_table(bundle, "pair_entropies");
    REQUIRE(entropies != nullptr);
    REQUIRE(entropies->rows.size() == 1);
    CHECK(std::abs(entropies->rows[0][0] - kLn8) <= 1e-10);
    CHECK(std::abs(entropies->rows[0][1] - kLn8) <= 1e-10);
    const auto* spectrum = find_table(bundle, "spectrum_I");
    REQUIRE(spectrum != nullptr);
    CHECK(spectrum->rows.size() == 8);
}

TEST_CASE("time-coincidence honors the configured grid and output gating") {
    const fs::path dir = sandbox("time");
    auto doc = desk_json();
    doc["time_grid"] = {{"t_start", -8.0}, {"delta_t", 0.8}, {"samples", 21}};
    const fs::path config = write_config(dir, "grid.json", doc);
    REQUIRE(run_cli("time-coincidence --config \"" + config.string() + "\" --out \"" +
                    (dir / "full").string() + "\"") == 0);
    REQUIRE(fs::exists(dir / "full" / "time_density.tsv"));
    const auto bundle = swapsim::parse_results(slurp(dir / "full" / "results.json"));
    const auto* density = find_table(bundle, "time_density");
    REQUIRE(density != nullptr);
    CHECK(density->rows.size() == 21 * 21);

    // restricting outputs suppresses the TSV but keeps the bundle table
    doc["outputs"] = {"summary"};
    const fs::path gated = write_config(dir, "gated.json", doc);
    REQUIRE(run_cli("time-coincidence --config \"" + gated.string() + "\" --out \"" +
                    (dir / "gated").string() + "\"") == 0);
    CHECK_FALSE(fs::exists(dir / "gated" / "time_density.tsv"));
    REQUIRE(fs::exists(dir / "gated" / "results.json"));
}
