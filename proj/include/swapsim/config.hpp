// config.hpp: experiment description files
//
// One JSON document describes a full bench: two pumped sources, the shared
// bin spacing, the frequency-sum measurement, and optional sampling, time
// grid, and output selections. Parsing is strict: unknown keys, wrong types,
// nonpositive frequencies, and profile/grid mismatches are distinct,
// key-path-naming diagnostics. serialize_experiment(parse_experiment(text))
// reparses to a value-identical config.
//
// Complete schema (defaults in parentheses, frequencies in arbitrary angular
// units):
//   schema_version   integer, must be 1
//   grid             { delta_omega: number > 0 }
//   sources          { I: source, II: source }
//     source         { pump_omega: number > 0, profile: profile, chi: number > 0 (1.0) }
//     profile        { type: "flat", omega_start: number > 0, bin_count: int >= 1 }
//                  | { type: "tabulated", omega_start: number > 0, bin_count: int >= 1,
//                      values: array of re | [re, im], length = bin_count }
//   measurement      { window_omega: number > 0, window_width: number > 0 (one bin),
//                      chi: number > 0 (1.0) }
//   path             "ideal" | "physical" ("ideal")
//   sampling         { trials: int >= 1 (10000), seed: uint64 (0) } (optional)
//   time_grid        { t_start: number, delta_t: number > 0, samples: int >= 2 } (optional)
//   outputs          array of report names (optional; all applicable reports when absent)
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "swapsim/spectral_amplitude.hpp"
#include "swapsim/swap.hpp"
#include "swapsim/time_density.hpp"

namespace swapsim {

enum class ConfigErrorKind {
    ParseFailure,
    UnknownKey,
    MissingKey,
    BadType,
    NonPositiveFrequency,
    GridMismatch,
    BadValue,
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(ConfigErrorKind kind, std::string key_path, const std::string& detail)
        : std::runtime_error("config error at '" + key_path + "': " + detail),
          kind_(kind),
          key_path_(std::move(key_path)) {}

    ConfigErrorKind kind() const noexcept { return kind_; }
    const std::string& key_path() const noexcept { return key_path_; }

  private:
    ConfigErrorKind kind_;
    std::string key_path_;
};

struct ProfileSpec {
    enum class Kind { Flat, Tabulated };
    Kind kind = Kind::Flat;
    double omega_start = 0.0;
    BinIndex bin_count = 0;
    std::vector<Complex> values;  // tabulated only, length = bin_count

    bool operator==(const ProfileSpec&) const = default;

    SpectralAmplitude realize(double delta_omega) const {
        const FrequencyGrid grid(omega_start, delta_omega, bin_count);
        if (kind == Kind::Flat) return SpectralAmplitude::flat(grid);
        return SpectralAmplitude(grid, values);
    }
};

struct SourceSpec {
    double pump_omega = 0.0;
    ProfileSpec profile;
    double chi = 1.0;

    bool operator==(const SourceSpec&) const = default;
};

struct SamplingSpec {
    std::int64_t trials = 10000;
    std::uint64_t seed = 0;

    bool operator==(const SamplingSpec&) const = default;
};

struct TimeGridSpec {
    double t_start = 0.0;
    double delta_t = 0.0;
    std::int32_t samples = 0;

    bool operator==(const TimeGridSpec&) const = default;

    TimeGrid realize() const { return TimeGrid(t_start, delta_t, samples); }
};

// Report names a config may request; each subcommand emits the applicable ones.
inline const std::set<std::string>& known_report_names() {
    static const std::set<std::string> names{"summary",     "spectrum",  "schmidt", "density",
                                             "coincidence", "histogram", "samples"};
    return names;
}

struct ExperimentFile {
    int schema_version = 1;
    double delta_omega = 0.0;
    SourceSpec source_I;
    SourceSpec source_II;
    double window_omega = 0.0;
    std::optional<double> window_width;
    double chi_III = 1.0;
    MeasurementPath path = MeasurementPath::IdealProjector;
    std::optional<SamplingSpec> sampling;
    std::optional<TimeGridSpec> time_grid;
    std::vector<std::string> outputs;

    bool operator==(const ExperimentFile&) const = default;

    bool wants(const std::string& report) const {
        if (outputs.empty()) return true;
        for (const auto& name : outputs)
            if (name == report) return true;
        return false;
    }

    SamplingSpec effective_sampling() const { return sampling.value_or(SamplingSpec{}); }

    SwapConfig to_swap_config() const {
        SwapConfig sc;
        sc.omega_I = source_I.pump_omega;
        sc.omega_II = source_II.pump_omega;
        sc.omega_III = window_omega;
        sc.f = source_I.profile.realize(delta_omega);
        sc.g = source_II.profile.realize(delta_omega);
        sc.window_width = window_width;
        sc.chi_I = source_I.chi;
        sc.chi_II = source_II.chi;
        sc.chi_III = chi_III;
        sc.path = path;
        return sc;
    }
};

namespace detail {

using Json = nlohmann::ordered_json;

inline void reject_unknown_keys(const Json& object, const std::set<std::string>& allowed,
                                const std::string& path) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.contains(key))
            throw ConfigError(ConfigErrorKind::UnknownKey, path.empty() ? key : path + "." + key,
                              "unknown key");
    }
}

inline const Json& require_key(const Json& object, const std::string& key,
                               const std::string& path) {
    auto it = object.find(key);
    if (it == object.end())
        throw ConfigError(ConfigErrorKind::MissingKey, path.empty() ? key : path + "." + key,
                          "missing required key");
    return *it;
}

inline const Json& require_object(const Json& value, const std::string& path) {
    if (!value.is_object())
        throw ConfigError(ConfigErrorKind::BadType, path, "expected an object");
    return value;
}

inline double as_number(const Json& value, const std::string& path) {
    if (!value.is_number())
        throw ConfigError(ConfigErrorKind::BadType, path, "expected a number");
    return value.get<double>();
}

inline double as_positive_frequency(const Json& value, const std::string& path) {
    const double x = as_number(value, path);
    if (!(x > 0.0))
        throw ConfigError(ConfigErrorKind::NonPositiveFrequency, path,
                          "frequencies must be positive");
    return x;
}

inline double as_positive_number(const Json& value, const std::string& path) {
    const double x = as_number(value, path);
    if (!(x > 0.0)) throw ConfigError(ConfigErrorKind::BadValue, path, "value must be > 0");
    return x;
}

inline std::int64_t as_integer(const Json& value, const std::string& path) {
    if (!value.is_number_integer())
        throw ConfigError(ConfigErrorKind::BadType, path, "expected an integer");
    return value.get<std::int64_t>();
}

inline Complex parse_profile_value(const Json& entry, const std::string& path) {
    if (entry.is_number()) return Complex(entry.get<double>(), 0.0);
    if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number())
        return Complex(entry[0].get<double>(), entry[1].get<double>());
    throw ConfigError(ConfigErrorKind::BadType, path, "expected a number or an [re, im] pair");
}

inline ProfileSpec parse_profile(const Json& value, const std::string& path) {
    require_object(value, path);
    const std::string type = [&] {
        const Json& t = require_key(value, "type", path);
        if (!t.is_string())
            throw ConfigError(ConfigErrorKind::BadType, path + ".type", "expected a string");
        return t.get<std::string>();
    }();

    ProfileSpec profile;
    if (type == "flat") {
        reject_unknown_keys(value, {"type", "omega_start", "bin_count"}, path);
        profile.kind = ProfileSpec::Kind::Flat;
    } else if (type == "tabulated") {
        reject_unknown_keys(value, {"type", "omega_start", "bin_count", "values"}, path);
        profile.kind = ProfileSpec::Kind::Tabulated;
    } else {
        throw ConfigError(ConfigErrorKind::BadValue, path + ".type",
                          "profile type must be \"flat\" or \"tabulated\"");
    }

    profile.omega_start =
        as_positive_frequency(require_key(value, "omega_start", path), path + ".omega_start");
    const std::int64_t bins = as_integer(require_key(value, "bin_count", path), path + ".bin_count");
    if (bins < 1)
        throw ConfigError(ConfigErrorKind::BadValue, path + ".bin_count", "must be >= 1");
    profile.bin_count = static_cast<BinIndex>(bins);

    if (profile.kind == ProfileSpec::Kind::Tabulated) {
        const Json& values = require_key(value, "values", path);
        if (!values.is_array())
            throw ConfigError(ConfigErrorKind::BadType, path + ".values", "expected an array");
        if (static_cast<std::int64_t>(values.size()) != bins)
            throw ConfigError(ConfigErrorKind::GridMismatch, path + ".values",
                              "tabulated profile has " + std::to_string(values.size()) +
                                  " values but the declared grid has " + std::to_string(bins) +
                                  " bins");
        profile.values.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            profile.values.push_back(
                parse_profile_value(values[i], path + ".values[" + std::to_string(i) + "]"));
    }
    return profile;
}

inline SourceSpec parse_source(const Json& value, const std::string& path) {
    require_object(value, path);
    reject_unknown_keys(value, {"pump_omega", "profile", "chi"}, path);
    SourceSpec source;
    source.pump_omega =
        as_positive_frequency(require_key(value, "pump_omega", path), path + ".pump_omega");
    source.profile = parse_profile(require_key(value, "profile", path), path + ".profile");
    if (value.contains("chi")) source.chi = as_positive_number(value["chi"], path + ".chi");
    return source;
}

inline Json profile_to_json(const ProfileSpec& profile) {
    Json j;
    j["type"] = profile.kind == ProfileSpec::Kind::Flat ? "flat" : "tabulated";
    j["omega_start"] = profile.omega_start;
    j["bin_count"] = profile.bin_count;
    if (profile.kind == ProfileSpec::Kind::Tabulated) {
        Json values = Json::array();
        for (const Complex& v : profile.values) values.push_back(Json::array({v.real(), v.imag()}));
        j["values"] = std::move(values);
    }
    return j;
}

}  // namespace detail

inline ExperimentFile parse_experiment(const std::string& text) {
    detail::Json doc;
    try {
        doc = detail::Json::parse(text);
    } catch (const nlohmann::json::parse_error& error) {
        throw ConfigError(ConfigErrorKind::ParseFailure, "<document>", error.what());
    }
    detail::require_object(doc, "<document>");
    detail::reject_unknown_keys(doc,
                                {"schema_version", "grid", "sources", "measurement", "path",
                                 "sampling", "time_grid", "outputs"},
                                "");

    ExperimentFile file;
    const std::int64_t version =
        detail::as_integer(detail::require_key(doc, "schema_version", ""), "schema_version");
    if (version != 1)
        throw ConfigError(ConfigErrorKind::BadValue, "schema_version",
                          "unrecognized schema version " + std::to_string(version) +
                              " (this tool reads version 1)");
    file.schema_version = static_cast<int>(version);

    {
        const detail::Json& grid = detail::require_object(detail::require_key(doc, "grid", ""), "grid");
        detail::reject_unknown_keys(grid, {"delta_omega"}, "grid");
        file.delta_omega = detail::as_positive_number(detail::require_key(grid, "delta_omega", "grid"),
                                                      "grid.delta_omega");
    }
    {
        const detail::Json& sources =
            detail::require_object(detail::require_key(doc, "sources", ""), "sources");
        detail::reject_unknown_keys(sources, {"I", "II"}, "sources");
        file.source_I = detail::parse_source(detail::require_key(sources, "I", "sources"), "sources.I");
        file.source_II =
            detail::parse_source(detail::require_key(sources, "II", "sources"), "sources.II");
    }
    {
        const detail::Json& meas =
            detail::require_object(detail::require_key(doc, "measurement", ""), "measurement");
        detail::reject_unknown_keys(meas, {"window_omega", "window_width", "chi"}, "measurement");
        file.window_omega = detail::as_positive_frequency(
            detail::require_key(meas, "window_omega", "measurement"), "measurement.window_omega");
        if (meas.contains("window_width"))
            file.window_width =
                detail::as_positive_number(meas["window_width"], "measurement.window_width");
        if (meas.contains("chi"))
            file.chi_III = detail::as_positive_number(meas["chi"], "measurement.chi");
    }
    if (doc.contains("path")) {
        const detail::Json& path = doc["path"];
        if (!path.is_string())
            throw ConfigError(ConfigErrorKind::BadType, "path", "expected a string");
        const std::string name = path.get<std::string>();
        if (name == "ideal")
            file.path = MeasurementPath::IdealProjector;
        else if (name == "physical")
            file.path = MeasurementPath::PhysicalMergeDetect;
        else
            throw ConfigError(ConfigErrorKind::BadValue, "path",
                              "must be \"ideal\" or \"physical\"");
    }
    if (doc.contains("sampling")) {
        const detail::Json& sampling = detail::require_object(doc["sampling"], "sampling");
        detail::reject_unknown_keys(sampling, {"trials", "seed"}, "sampling");
        SamplingSpec spec;
        if (sampling.contains("trials")) {
            const std::int64_t trials = detail::as_integer(sampling["trials"], "sampling.trials");
            if (trials < 1)
                throw ConfigError(ConfigErrorKind::BadValue, "sampling.trials", "must be >= 1");
            spec.trials = trials;
        }
        if (sampling.contains("seed")) {
            const detail::Json& seed = sampling["seed"];
            if (!seed.is_number_integer() ||
                (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
                throw ConfigError(ConfigErrorKind::BadValue, "sampling.seed",
                                  "must be a nonnegative integer");
            spec.seed = seed.get<std::uint64_t>();
        }
        file.sampling = spec;
    }
    if (doc.contains("time_grid")) {
        const detail::Json& tg = detail::require_object(doc["time_grid"], "time_grid");
        detail::reject_unknown_keys(tg, {"t_start", "delta_t", "samples"}, "time_grid");
        TimeGridSpec spec;
        spec.t_start =
            detail::as_number(detail::require_key(tg, "t_start", "time_grid"), "time_grid.t_start");
        spec.delta_t = detail::as_positive_number(detail::require_key(tg, "delta_t", "time_grid"),
                                                  "time_grid.delta_t");
        const std::int64_t samples =
            detail::as_integer(detail::require_key(tg, "samples", "time_grid"), "time_grid.samples");
        if (samples < 2)
            throw ConfigError(ConfigErrorKind::BadValue, "time_grid.samples", "must be >= 2");
        spec.samples = static_cast<std::int32_t>(samples);
        file.time_grid = spec;
    }
    if (doc.contains("outputs")) {
        const detail::Json& outputs = doc["outputs"];
        if (!outputs.is_array())
            throw ConfigError(ConfigErrorKind::BadType, "outputs", "expected an array");
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            const std::string path = "outputs[" + std::to_string(i) + "]";
            if (!outputs[i].is_string())
                throw ConfigError(ConfigErrorKind::BadType, path, "expected a string");
            const std::string name = outputs[i].get<std::string>();
            if (!known_report_names().contains(name))
                throw ConfigError(ConfigErrorKind::BadValue, path, "unknown report \"" + name + "\"");
            file.outputs.push_back(name);
        }
    }

    // Realize both profiles once so any amplitude- or lattice-level rule
    // enforced by the library surfaces as a parse diagnostic, not mid-run.
    try {
        file.source_I.profile.realize(file.delta_omega);
        file.source_II.profile.realize(file.delta_omega);
    } catch (const std::invalid_argument& error) {
        throw ConfigError(ConfigErrorKind::BadValue, "sources", error.what());
    }
    return file;
}

inline std::string serialize_experiment(const ExperimentFile& file) {
    detail::Json doc;
    doc["schema_version"] = file.schema_version;
    doc["grid"] = {{"delta_omega", file.delta_omega}};
    detail::Json sources;
    for (const auto& [name, source] :
         {std::pair{"I", &file.source_I}, std::pair{"II", &file.source_II}}) {
        detail::Json j;
        j["pump_omega"] = source->pump_omega;
        j["profile"] = detail::profile_to_json(source->profile);
        j["chi"] = source->chi;
        sources[name] = std::move(j);
    }
    doc["sources"] = std::move(sources);
    detail::Json meas;
    meas["window_omega"] = file.window_omega;
    if (file.window_width) meas["window_width"] = *file.window_width;
    meas["chi"] = file.chi_III;
    doc["measurement"] = std::move(meas);
    doc["path"] = std::string(to_string(file.path));
    if (file.sampling)
        doc["sampling"] = {{"trials", file.sampling->trials}, {"seed", file.sampling->seed}};
    if (file.time_grid)
        doc["time_grid"] = {{"t_start", file.time_grid->t_start},
                            {"delta_t", file.time_grid->delta_t},
                            {"samples", file.time_grid->samples}};
    if (!file.outputs.empty()) doc["outputs"] = file.outputs;
    return doc.dump(2) + "\n";
}

}  // namespace swapsim
