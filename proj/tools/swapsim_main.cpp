// swapsim_main.cpp: command-line entry point
//
// Subcommands: biphoton | time-coincidence | swap | sample. Each reads one
// experiment config, runs the corresponding pipeline stage, and writes one
// results.json plus flat TSV tables into --out. Outputs are write-once: an
// existing target file is a usage error, nothing is overwritten. Identical
// config and seed produce byte-identical files.
//
// Exit codes: 0 success, 1 config or usage error, 2 empty post-selection.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swapsim/swapsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitEmptyPostSelection = 2;

constexpr const char* kUnitOmega = "arb_omega";      // arbitrary angular-frequency units
constexpr const char* kUnitTime = "1/arb_omega";     // conjugate time units
constexpr const char* kUnitDensity = "arb_omega^2";  // joint time density
constexpr const char* kUnitNone = "1";
constexpr const char* kUnitNat = "nat";
constexpr const char* kUnitCount = "count";

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::string path_override;  // empty, "ideal", or "physical"
};

void add_common_flags(CLI::App& sub, CommonFlags& flags) {
    sub.add_option("--config", flags.config_path, "Experiment config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub.add_option("--out", flags.out_dir, "Output directory (created if missing)");
    sub.add_option("--seed", flags.seed, "Override the sampling seed");
    sub.add_option("--trials", flags.trials, "Override the sampling trial count")
        ->check(CLI::PositiveNumber);
    sub.add_option("--path", flags.path_override, "Override the measurement path")
        ->check(CLI::IsMember({"ideal", "physical"}));
}

// Config with command-line overrides folded in; provenance hashes this
// effective form, so a flag change is visible in the result bundle.
swapsim::ExperimentFile load_experiment(const CommonFlags& flags) {
    std::ifstream in(flags.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in) throw std::runtime_error("cannot read config file: " + flags.config_path);

    swapsim::ExperimentFile file = swapsim::parse_experiment(text.str());
    if (flags.seed || flags.trials) {
        swapsim::SamplingSpec sampling = file.effective_sampling();
        if (flags.seed) sampling.seed = *flags.seed;
        if (flags.trials) sampling.trials = *flags.trials;
        file.sampling = sampling;
    }
    if (flags.path_override == "ideal") file.path = swapsim::MeasurementPath::IdealProjector;
    if (flags.path_override == "physical") file.path = swapsim::MeasurementPath::PhysicalMergeDetect;
    return file;
}

swapsim::Provenance make_provenance(const swapsim::ExperimentFile& file) {
    swapsim::Provenance provenance;
    provenance.tool_version = std::string(swapsim::kVersion);
    provenance.config_hash = swapsim::fnv1a_hex(swapsim::serialize_experiment(file));
    provenance.seed = file.effective_sampling().seed;
    return provenance;
}

// One output file per table, plus the bundle itself as results.json.
struct RunOutputs {
    swapsim::ResultBundle bundle;
    std::vector<std::pair<std::string, swapsim::NamedTable>> tsv_files;
};

void write_outputs(const RunOutputs& outputs, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<fs::path> targets{fs::path(out_dir) / "results.json"};
    for (const auto& [name, table] : outputs.tsv_files) targets.push_back(fs::path(out_dir) / name);
    for (const fs::path& target : targets)
        if (fs::exists(target))
            throw std::runtime_error("output file already exists (outputs are write-once): " +
                                     target.string());

    std::ofstream json_out(targets.front());
    json_out << swapsim::serialize_results(outputs.bundle);
    if (!json_out) throw std::runtime_error("cannot write " + targets.front().string());
    for (std::size_t i = 0; i < outputs.tsv_files.size(); ++i) {
        std::ofstream tsv_out(targets[i + 1]);
        swapsim::write_tsv(outputs.tsv_files[i].second, tsv_out);
        if (!tsv_out) throw std::runtime_error("cannot write " + targets[i + 1].string());
    }
}

swapsim::NamedTable spectrum_table(const std::string& name, const swapsim::PhotonState& pair) {
    swapsim::NamedTable table;
    table.name = name;
    table.columns = {"omega_a", "omega_b", "amplitude_re", "amplitude_im", "probability"};
    table.units = {kUnitOmega, kUnitOmega, kUnitNone, kUnitNone, kUnitNone};
    for (const auto& [tuple, amp] : pair.amplitudes())
        table.rows.push_back({pair.frequency(tuple, 0), pair.frequency(tuple, 1), amp.real(),
                              amp.imag(), std::norm(amp)});
    return table;
}

swapsim::NamedTable schmidt_table(const std::string& name, const std::vector<double>& coefficients) {
    swapsim::NamedTable table;
    table.name = name;
    table.columns = {"index", "coefficient"};
    table.units = {kUnitNone, kUnitNone};
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        table.rows.push_back({static_cast<double>(i), coefficients[i]});
    return table;
}

// Time grid centered on the zero delay, spanning four density lobes of the
// source-I biphoton (first zero at 2*pi / total bandwidth).
swapsim::TimeGrid default_time_grid(const swapsim::ExperimentFile& file) {
    const double bandwidth =
        file.delta_omega * static_cast<double>(file.source_I.profile.bin_count);
    const double half_span = 4.0 * std::numbers::pi / bandwidth;
    constexpr std::int32_t samples = 201;
    return swapsim::TimeGrid(-half_span, 2.0 * half_span / (samples - 1), samples);
}

RunOutputs run_biphoton(const swapsim::ExperimentFile& file) {
    const swapsim::SwapConfig config = file.to_swap_config();
    const swapsim::PhotonState pair_I = swapsim::spdc_biphoton(
        config.omega_I, config.f, swapsim::ChannelId::Ch1, swapsim::ChannelId::Ch2);
    const swapsim::PhotonState pair_II = swapsim::spdc_biphoton(
        config.omega_II, config.g, swapsim::ChannelId::Ch3, swapsim::ChannelId::Ch4);
    const swapsim::SchmidtDecomposition schmidt_I =
        swapsim::schmidt_decompose(pair_I, {swapsim::ChannelId::Ch1});
    const swapsim::SchmidtDecomposition schmidt_II =
        swapsim::schmidt_decompose(pair_II, {swapsim::ChannelId::Ch3});

    RunOutputs outputs;
    outputs.bundle.summary.command = "biphoton";
    outputs.bundle.summary.path = std::string(swapsim::to_string(file.path));
    outputs.bundle.summary.post_selected = false;
    outputs.bundle.summary.success_probability = 1.0;
    outputs.bundle.summary.sum_invariant =
        file.source_I.pump_omega + file.source_II.pump_omega - file.window_omega;
    outputs.bundle.summary.entanglement_entropy = schmidt_I.entropy;
    outputs.bundle.summary.schmidt_coefficients = schmidt_I.coefficients;

    swapsim::NamedTable entropies;
    entropies.name = "pair_entropies";
    entropies.columns = {"entropy_I", "entropy_II"};
    entropies.units = {kUnitNat, kUnitNat};
    entropies.rows = {{schmidt_I.entropy, schmidt_II.entropy}};
    outputs.bundle.tables.push_back(entropies);

    if (file.wants("spectrum")) {
        outputs.tsv_files.emplace_back("spectrum_I.tsv", spectrum_table("spectrum_I", pair_I));
        outputs.tsv_files.emplace_back("spectrum_II.tsv", spectrum_table("spectrum_II", pair_II));
    }
    if (file.wants("schmidt")) {
        outputs.tsv_files.emplace_back("schmidt_I.tsv",
                                       schmidt_table("schmidt_I", schmidt_I.coefficients));
        outputs.tsv_files.emplace_back("schmidt_II.tsv",
                                       schmidt_table("schmidt_II", schmidt_II.coefficients));
    }
    for (const auto& [name, table] : outputs.tsv_files) outputs.bundle.tables.push_back(table);
    return outputs;
}

RunOutputs run_time_coincidence(const swapsim::ExperimentFile& file) {
    const swapsim::SwapConfig config = file.to_swap_config();
    const swapsim::PhotonState pair_I = swapsim::spdc_biphoton(
        config.omega_I, config.f, swapsim::ChannelId::Ch1, swapsim::ChannelId::Ch2);
    const swapsim::TimeGrid grid =
        file.time_grid ? file.time_grid->realize() : default_time_grid(file);
    const swapsim::TimeDensity density = swapsim::joint_time_density(
        pair_I, swapsim::ChannelId::Ch1, swapsim::ChannelId::Ch2, grid);

    RunOutputs outputs;
    outputs.bundle.summary.command = "time-coincidence";
    outputs.bundle.summary.path = std::string(swapsim::to_string(file.path));
    outputs.bundle.summary.post_selected = false;
    outputs.bundle.summary.success_probability = 1.0;
    outputs.bundle.summary.sum_invariant =
        file.source_I.pump_omega + file.source_II.pump_omega - file.window_omega;

    swapsim::NamedTable table;
    table.name = "time_density";
    table.columns = {"t_1", "t_2", "density"};
    table.units = {kUnitTime, kUnitTime, kUnitDensity};
    for (std::int32_t i = 0; i < grid.sample_count; ++i)
        for (std::int32_t j = 0; j < grid.sample_count; ++j)
            table.rows.push_back({grid.time(i), grid.time(j), density.value(i, j)});
    if (file.wants("density")) outputs.tsv_files.emplace_back("time_density.tsv", table);
    outputs.bundle.tables.push_back(std::move(table));
    return outputs;
}

RunOutputs swap_outputs(const swapsim::ExperimentFile& file, const swapsim::SwapResult& result,
                        const std::string& command) {
    RunOutputs outputs;
    outputs.bundle.summary.command = command;
    outputs.bundle.summary.path = std::string(swapsim::to_string(result.path));
    outputs.bundle.summary.post_selected = result.succeeded();
    outputs.bundle.summary.success_probability = result.success_probability;
    outputs.bundle.summary.chi_scale = result.chi_scale;
    outputs.bundle.summary.sum_invariant = result.sum_invariant;
    outputs.bundle.summary.entanglement_entropy = result.entanglement_entropy;
    outputs.bundle.summary.schmidt_coefficients = result.schmidt_coefficients;

    if (result.components.size() > 1) {
        swapsim::NamedTable components;
        components.name = "sum_bin_components";
        components.columns = {"sum_center", "probability"};
        components.units = {kUnitOmega, kUnitNone};
        for (const swapsim::SumBinComponent& comp : result.components)
            components.rows.push_back({comp.sum_center, comp.probability});
        outputs.bundle.tables.push_back(std::move(components));
    }
    if (result.post_state_14) {
        if (file.wants("coincidence")) {
            swapsim::NamedTable table;
            table.name = "coincidence";
            table.columns = {"omega_1", "omega_4", "probability"};
            table.units = {kUnitOmega, kUnitOmega, kUnitNone};
            for (const swapsim::CoincidenceCell& cell : result.coincidence_table)
                table.rows.push_back({cell.omega_1, cell.omega_4, cell.probability});
            outputs.tsv_files.emplace_back("coincidence.tsv", table);
            outputs.bundle.tables.push_back(std::move(table));
        }
        if (file.wants("schmidt")) {
            swapsim::NamedTable table = schmidt_table("schmidt", result.schmidt_coefficients);
            outputs.tsv_files.emplace_back("schmidt.tsv", table);
            outputs.bundle.tables.push_back(std::move(table));
        }
    }
    return outputs;
}

RunOutputs run_sample(const swapsim::ExperimentFile& file, const swapsim::SwapResult& result) {
    RunOutputs outputs = swap_outputs(file, result, "sample");
    const swapsim::SamplingSpec sampling = file.effective_sampling();
    const swapsim::SampleRun run =
        swapsim::sample_frequencies(*result.post_state_14, sampling.trials, sampling.seed);

    const swapsim::Channel& c1 = run.channels.front();
    const swapsim::Channel& c4 = run.channels.back();
    const swapsim::NarrowbandDetector det_1(c1.id, c1.grid.center(0), c1.grid.delta_omega);
    const swapsim::NarrowbandDetector det_4(c4.id, c4.grid.center(0), c4.grid.delta_omega);
    const auto cells = swapsim::full_grid_cells(run, c1.id, c4.id);
    const auto histogram = swapsim::coincidence_histogram(run, det_1, det_4, cells);

    swapsim::NamedTable table;
    table.name = "histogram";
    table.columns = {"omega_1", "omega_4", "count"};
    table.units = {kUnitOmega, kUnitOmega, kUnitCount};
    for (const swapsim::HistogramCell& cell : histogram)
        table.rows.push_back({cell.omega_a, cell.omega_b, static_cast<double>(cell.count)});
    if (file.wants("histogram")) outputs.tsv_files.emplace_back("histogram.tsv", table);
    outputs.bundle.tables.push_back(std::move(table));
    return outputs;
}

int run(const std::string& command, const CommonFlags& flags) {
    const swapsim::ExperimentFile file = load_experiment(flags);

    RunOutputs outputs;
    bool empty_post_selection = false;
    if (command == "biphoton") {
        outputs = run_biphoton(file);
    } else if (command == "time-coincidence") {
        outputs = run_time_coincidence(file);
    } else {
        const swapsim::SwapResult result = swapsim::run_swap(file.to_swap_config());
        if (command == "swap") {
            outputs = swap_outputs(file, result, "swap");
            empty_post_selection = !result.succeeded();
        } else if (!result.succeeded() || !result.post_state_14) {
            // sample needs a definite post-state; a multi-bin capture without
            // one is reported like an empty capture, with the record on disk.
            outputs = swap_outputs(file, result, "sample");
            empty_post_selection = true;
        } else {
            outputs = run_sample(file, result);
        }
    }

    outputs.bundle.provenance = make_provenance(file);
    write_outputs(outputs, flags.out_dir);
    if (empty_post_selection) {
        std::cerr << "note: no successful post-selection for this config; "
                     "results.json records the empty outcome\n";
        return kExitEmptyPostSelection;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale simulator of photon frequency entanglement swapping"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* biphoton = app.add_subcommand("biphoton", "Emit biphoton spectra and Schmidt data");
    CLI::App* time_coincidence =
        app.add_subcommand("time-coincidence", "Emit the joint (t1, t2) detection density");
    CLI::App* swap = app.add_subcommand("swap", "Run the full entanglement swap");
    CLI::App* sample = app.add_subcommand("sample", "Sample coincidence events from the swap");
    for (CLI::App* sub : {biphoton, time_coincidence, swap, sample}) add_common_flags(*sub, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitConfigError;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), flags);
    } catch (const swapsim::ConfigError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitConfigError;
    }
}
