// Copyright 2026 The lcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "lcap/experiment.hpp"

#include "lcap/error.hpp"
#include "lcap/fourier.hpp"
#include "lcap/lie.hpp"
#include "lcap/noise.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace lcap {

using nlohmann::json;

namespace {

constexpr ExperimentKind kAllKinds[] = {
    ExperimentKind::Capability,     ExperimentKind::Coeffs,
    ExperimentKind::Barren,         ExperimentKind::Counts,
    ExperimentKind::FourierGen,     ExperimentKind::Dla,
    ExperimentKind::NoisyCapability, ExperimentKind::ShotCapability,
};

constexpr std::size_t kShotQubitCap = 6;
constexpr std::size_t kNoisyQubitCap = 4;

void check_keys(const json &obj, std::initializer_list<std::string_view> allowed,
                const std::string &where) {
    LCAP_REQUIRE(obj.is_object(), ConfigError, where + " must be an object");
    for (const auto &[key, value] : obj.items()) {
        const bool known = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
        LCAP_REQUIRE(known, ConfigError, "unknown key '" + key + "' in " + where);
    }
}

template <class T>
void read(const json &obj, const char *key, T &out, const std::string &where) {
    if (!obj.contains(key)) {
        return;
    }
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
    }
}

template <class Parse>
auto read_enum(const json &obj, const char *key, Parse parse,
               const std::string &where) {
    std::string name;
    read(obj, key, name, where);
    try {
        return parse(name);
    } catch (const SpecError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

AnsatzSpec parse_ansatz(const json &j) {
    const std::string where = "ansatz";
    std::string type = "layered";
    read(j, "type", type, where);
    if (type == "layered") {
        check_keys(j, {"type", "num_qubits", "num_layers", "zero_layer", "u1",
                       "ent_gate", "ent_layers", "ent_style", "ent_structure"},
                   where);
        LayeredSpec s;
        read(j, "num_qubits", s.num_qubits, where);
        read(j, "num_layers", s.num_layers, where);
        read(j, "zero_layer", s.zero_layer, where);
        read(j, "ent_layers", s.ent_layers, where);
        if (j.contains("u1")) {
            s.u1 = read_enum(j, "u1", parse_single_qubit_unitary, where);
        }
        if (j.contains("ent_gate")) {
            s.ent_gate = read_enum(j, "ent_gate", parse_entanglement_gate, where);
        }
        if (j.contains("ent_style")) {
            s.ent_style = read_enum(j, "ent_style", parse_ent_style, where);
        }
        if (j.contains("ent_structure")) {
            s.ent_structure = read_enum(j, "ent_structure", parse_ent_structure, where);
        }
        return s;
    }
    if (type == "dqnn") {
        check_keys(j, {"type", "widths", "data_reupload", "zero_layer", "u1"}, where);
        DqnnSpec s;
        read(j, "widths", s.widths, where);
        read(j, "data_reupload", s.data_reupload, where);
        read(j, "zero_layer", s.zero_layer, where);
        if (j.contains("u1")) {
            s.u1 = read_enum(j, "u1", parse_single_qubit_unitary, where);
        }
        return s;
    }
    throw ConfigError("ansatz.type must be 'layered' or 'dqnn', got '" + type + "'");
}

json ansatz_json(const AnsatzSpec &spec) {
    if (const auto *l = std::get_if<LayeredSpec>(&spec)) {
        return {{"type", "layered"},
                {"num_qubits", l->num_qubits},
                {"num_layers", l->num_layers},
                {"zero_layer", l->zero_layer},
                {"u1", to_string(l->u1)},
                {"ent_gate", to_string(l->ent_gate)},
                {"ent_layers", l->ent_layers},
                {"ent_style", to_string(l->ent_style)},
                {"ent_structure", to_string(l->ent_structure)}};
    }
    const auto &d = std::get<DqnnSpec>(spec);
    return {{"type", "dqnn"},
            {"widths", d.widths},
            {"data_reupload", d.data_reupload},
            {"zero_layer", d.zero_layer},
            {"u1", to_string(d.u1)}};
}

std::size_t num_qubits_of(const AnsatzSpec &spec) {
    if (const auto *l = std::get_if<LayeredSpec>(&spec)) {
        return l->num_qubits;
    }
    const auto &w = std::get<DqnnSpec>(spec).widths;
    return std::accumulate(w.begin(), w.end(), std::size_t{0});
}

std::size_t line_of_offset(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

json histogram_json(const Histogram &h) {
    return {{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}};
}

void write_text(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    LCAP_REQUIRE(out.good(), Error, "cannot write '" + path.string() + "'");
    out << content;
    LCAP_REQUIRE(out.good(), Error, "failed writing '" + path.string() + "'");
}

std::vector<FourierSeries> function_set(const ExperimentConfig &c) {
    if (c.functions.path) {
        auto set = load_series_set(*c.functions.path);
        LCAP_REQUIRE(!set.empty(), ConfigError,
                     "function file '" + *c.functions.path + "' is empty");
        for (const auto &g : set) {
            LCAP_REQUIRE(g.degree() == c.degree, ConfigError,
                         "function file contains degree " + std::to_string(g.degree()) +
                             " but the experiment degree is " +
                             std::to_string(c.degree));
        }
        return set;
    }
    return random_series_set(c.degree, c.functions.count, c.functions.seed);
}

json metadata(const ExperimentConfig &c) {
    return {{"kind", to_string(c.kind)},
            {"ansatz", ansatz_json(c.ansatz)},
            {"description", describe(c.ansatz)},
            {"config", json::parse(serialize_config(c))}};
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::Capability:
        return "capability";
    case ExperimentKind::Coeffs:
        return "coeffs";
    case ExperimentKind::Barren:
        return "barren";
    case ExperimentKind::Counts:
        return "counts";
    case ExperimentKind::FourierGen:
        return "fourier-gen";
    case ExperimentKind::Dla:
        return "dla";
    case ExperimentKind::NoisyCapability:
        return "noisy-capability";
    case ExperimentKind::ShotCapability:
        return "shot-capability";
    }
    return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    for (auto k : kAllKinds) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text,
                              std::optional<ExperimentKind> default_kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError("config parse error at line " +
                          std::to_string(line_of_offset(text, e.byte)) + ": " +
                          e.what());
    }
    check_keys(j, {"kind", "ansatz", "degree", "functions", "training", "noise",
                   "seed", "workers", "output", "barren", "coeffs", "allow_large"},
               "config");
    ExperimentConfig c;
    if (j.contains("kind")) {
        std::string kind;
        read(j, "kind", kind, "config");
        const auto k = parse_experiment_kind(kind);
        LCAP_REQUIRE(k.has_value(), ConfigError, "unknown experiment kind '" + kind + "'");
        LCAP_REQUIRE(!default_kind || *default_kind == *k, ConfigError,
                     "config kind '" + kind + "' does not match the requested '" +
                         std::string(to_string(*default_kind)) + "'");
        c.kind = *k;
    } else {
        LCAP_REQUIRE(default_kind.has_value(), ConfigError, "config is missing 'kind'");
        c.kind = *default_kind;
    }
    if (j.contains("ansatz")) {
        c.ansatz = parse_ansatz(j.at("ansatz"));
    }
    read(j, "degree", c.degree, "config");
    read(j, "seed", c.seed, "config");
    read(j, "workers", c.workers, "config");
    read(j, "output", c.output, "config");
    read(j, "allow_large", c.allow_large, "config");

    if (j.contains("functions")) {
        const json &f = j.at("functions");
        check_keys(f, {"path", "count", "seed"}, "functions");
        if (f.contains("path")) {
            std::string p;
            read(f, "path", p, "functions");
            c.functions.path = p;
        }
        read(f, "count", c.functions.count, "functions");
        read(f, "seed", c.functions.seed, "functions");
    }

    TrainConfig &t = c.training;
    if (j.contains("training")) {
        const json &tj = j.at("training");
        const std::string w = "training";
        check_keys(tj, {"preset", "preset_epochs", "schedule", "batch_size", "cutoff",
                        "adam", "init", "mode", "shots", "stochastic_validation",
                        "target_scale"},
                   w);
        if (tj.contains("preset")) {
            std::string p;
            read(tj, "preset", p, w);
            c.preset = p;
        }
        read(tj, "preset_epochs", c.preset_epochs, w);
        if (tj.contains("schedule")) {
            std::vector<std::pair<std::size_t, double>> s;
            read(tj, "schedule", s, w);
            t.schedule.clear();
            for (const auto &[e, lr] : s) {
                t.schedule.push_back({e, lr});
            }
        }
        if (tj.contains("batch_size")) {
            std::size_t b = 0;
            read(tj, "batch_size", b, w);
            t.batch_size = b;
        }
        read(tj, "cutoff", t.cutoff, w);
        if (tj.contains("adam")) {
            const json &a = tj.at("adam");
            check_keys(a, {"beta1", "beta2", "epsilon"}, "training.adam");
            read(a, "beta1", t.adam_beta1, "training.adam");
            read(a, "beta2", t.adam_beta2, "training.adam");
            read(a, "epsilon", t.adam_epsilon, "training.adam");
        }
        if (tj.contains("init")) {
            std::pair<double, double> range;
            read(tj, "init", range, w);
            t.init_low = range.first;
            t.init_high = range.second;
        }
        if (tj.contains("mode")) {
            std::string m;
            read(tj, "mode", m, w);
            const auto mode = parse_evaluation_mode(m);
            LCAP_REQUIRE(mode.has_value(), ConfigError,
                         "training.mode must be analytic, shots or noisy");
            t.mode = *mode;
        }
        if (tj.contains("shots")) {
            const json &s = tj.at("shots");
            check_keys(s, {"shots", "seed"}, "training.shots");
            read(s, "shots", t.shots.shots, "training.shots");
            read(s, "seed", t.shots.seed, "training.shots");
        }
        read(tj, "stochastic_validation", t.stochastic_validation, w);
        read(tj, "target_scale", t.target_scale, w);
    }
    if (c.preset) {
        t.schedule = schedule_preset(*c.preset, c.preset_epochs);
    }
    if (!t.batch_size) {
        t.batch_size = default_batch_size(c.degree);
    }
    if (c.kind == ExperimentKind::ShotCapability) {
        t.mode = EvaluationMode::Shots;
    } else if (c.kind == ExperimentKind::NoisyCapability) {
        t.mode = EvaluationMode::Noisy;
    }

    if (j.contains("noise")) {
        const json &n = j.at("noise");
        check_keys(n, {"model", "mapping", "target_scale", "sample_shots"}, "noise");
        if (n.contains("model")) {
            std::string p;
            read(n, "model", p, "noise");
            c.noise.model_path = p;
        }
        read(n, "mapping", c.noise.mapping, "noise");
        read(n, "target_scale", c.noise.target_scale, "noise");
        read(n, "sample_shots", c.noise.sample_shots, "noise");
    }
    if (j.contains("barren")) {
        const json &b = j.at("barren");
        check_keys(b, {"trials_per_function", "mode"}, "barren");
        read(b, "trials_per_function", c.barren_trials, "barren");
        std::string mode = "probe";
        read(b, "mode", mode, "barren");
        LCAP_REQUIRE(mode == "probe" || mode == "all", ConfigError,
                     "barren.mode must be 'probe' or 'all'");
        c.barren_mode = mode == "probe" ? BarrenMode::Probe : BarrenMode::AllParameters;
    }
    if (j.contains("coeffs")) {
        const json &s = j.at("coeffs");
        check_keys(s, {"num_samples"}, "coeffs");
        read(s, "num_samples", c.coeff_samples, "coeffs");
    }
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::string &path,
                             std::optional<ExperimentKind> default_kind) {
    std::ifstream in(path, std::ios::binary);
    LCAP_REQUIRE(in.good(), ConfigError, "cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), default_kind);
}

std::string serialize_config(const ExperimentConfig &c) {
    const TrainConfig &t = c.training;
    json training = {{"cutoff", t.cutoff},
                     {"adam",
                      {{"beta1", t.adam_beta1},
                       {"beta2", t.adam_beta2},
                       {"epsilon", t.adam_epsilon}}},
                     {"init", {t.init_low, t.init_high}},
                     {"mode", to_string(t.mode)},
                     {"shots", {{"shots", t.shots.shots}, {"seed", t.shots.seed}}},
                     {"stochastic_validation", t.stochastic_validation},
                     {"target_scale", t.target_scale}};
    if (c.preset) {
        training["preset"] = *c.preset;
        training["preset_epochs"] = c.preset_epochs;
    } else {
        json s = json::array();
        for (const auto &seg : t.schedule) {
            s.push_back({seg.epochs, seg.learning_rate});
        }
        training["schedule"] = s;
    }
    if (t.batch_size) {
        training["batch_size"] = *t.batch_size;
    }
    json functions = {{"count", c.functions.count}, {"seed", c.functions.seed}};
    if (c.functions.path) {
        functions["path"] = *c.functions.path;
    }
    json noise = {{"mapping", c.noise.mapping},
                  {"target_scale", c.noise.target_scale},
                  {"sample_shots", c.noise.sample_shots}};
    if (c.noise.model_path) {
        noise["model"] = *c.noise.model_path;
    }
    json j = {{"kind", to_string(c.kind)},
              {"ansatz", ansatz_json(c.ansatz)},
              {"degree", c.degree},
              {"functions", functions},
              {"training", training},
              {"noise", noise},
              {"seed", c.seed},
              {"workers", c.workers},
              {"output", c.output},
              {"barren",
               {{"trials_per_function", c.barren_trials},
                {"mode", c.barren_mode == BarrenMode::Probe ? "probe" : "all"}}},
              {"coeffs", {{"num_samples", c.coeff_samples}}},
              {"allow_large", c.allow_large}};
    return j.dump(2) + "\n";
}

void validate_config(const ExperimentConfig &c) {
    try {
        std::visit([](const auto &s) { s.validate(); }, c.ansatz);
    } catch (const SpecError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("ansatz: ") + e.what());
    }
    {
        // Noise settings are resolved at run time from the noise section.
        TrainConfig t = c.training;
        if (t.mode == EvaluationMode::Noisy) {
            t.noise = NoiseSettings{NoiseModel::noiseless(1), {0}};
        }
        t.validate();
    }
    LCAP_REQUIRE(c.training.mode != EvaluationMode::Noisy ||
                     c.kind == ExperimentKind::NoisyCapability,
                 ConfigError, "training.mode 'noisy' needs kind 'noisy-capability'");
    const bool trains = c.kind == ExperimentKind::Capability ||
                        c.kind == ExperimentKind::ShotCapability ||
                        c.kind == ExperimentKind::NoisyCapability;
    const bool uses_functions = trains || c.kind == ExperimentKind::Barren ||
                                c.kind == ExperimentKind::FourierGen;
    if (uses_functions || c.kind == ExperimentKind::Coeffs) {
        LCAP_REQUIRE(c.degree >= 1, ConfigError, "degree must be at least 1");
    }
    if (uses_functions) {
        LCAP_REQUIRE(c.functions.path || c.functions.count > 0, ConfigError,
                     "functions.count must be positive");
        if (c.functions.path) {
            LCAP_REQUIRE(std::filesystem::exists(*c.functions.path), ConfigError,
                         "function file '" + *c.functions.path + "' does not exist");
        }
    }
    LCAP_REQUIRE(c.barren_trials > 0, ConfigError,
                 "barren.trials_per_function must be positive");
    LCAP_REQUIRE(c.coeff_samples > 0, ConfigError, "coeffs.num_samples must be positive");
    const std::size_t n = num_qubits_of(c.ansatz);
    if (c.kind == ExperimentKind::ShotCapability && !c.allow_large) {
        LCAP_REQUIRE(n <= kShotQubitCap, ConfigError,
                     "shot-based runs are capped at 6 qubits (set allow_large)");
    }
    if (c.kind == ExperimentKind::NoisyCapability) {
        LCAP_REQUIRE(c.allow_large || n <= kNoisyQubitCap, ConfigError,
                     "noisy runs are capped at 4 qubits (set allow_large)");
        LCAP_REQUIRE(n <= NoisySimulator::kMaxQubits, ConfigError,
                     "noisy runs support at most 8 qubits");
        LCAP_REQUIRE(c.noise.mapping.empty() || c.noise.mapping.size() == n,
                     ConfigError, "noise.mapping must list one qubit per logical qubit");
        if (c.noise.model_path) {
            LCAP_REQUIRE(std::filesystem::exists(*c.noise.model_path), ConfigError,
                         "noise model '" + *c.noise.model_path + "' does not exist");
        }
    }
    if (c.kind == ExperimentKind::Dla) {
        LCAP_REQUIRE(n <= kMaxLieQubits, ConfigError,
                     "dla supports at most 5 qubits");
    }
}

std::vector<std::string> run_experiment(const ExperimentConfig &config,
                                        const RunOptions &options) {
    validate_config(config);
    std::filesystem::create_directories(options.out_dir);
    std::ostringstream discard;
    std::ostream &out = options.summary ? *options.summary : discard;
    std::vector<std::string> written;
    auto emit = [&](const std::string &name, const std::string &content) {
        write_text(options.out_dir / name, content);
        written.push_back(name);
    };
    const std::size_t workers = std::max<std::size_t>(1, options.workers);

    switch (config.kind) {
    case ExperimentKind::Capability:
    case ExperimentKind::ShotCapability:
    case ExperimentKind::NoisyCapability: {
        const auto functions = function_set(config);
        TrainConfig tc = config.training;
        if (config.kind == ExperimentKind::NoisyCapability) {
            const std::size_t n = num_qubits_of(config.ansatz);
            NoiseSettings ns;
            ns.model = config.noise.model_path ? load_noise_model(*config.noise.model_path)
                                               : NoiseModel::calibration_snapshot();
            ns.mapping = config.noise.mapping;
            if (ns.mapping.empty()) {
                ns.mapping.resize(n);
                std::iota(ns.mapping.begin(), ns.mapping.end(), std::size_t{0});
            }
            tc.noise = std::move(ns);
            tc.noisy_shots = config.noise.sample_shots;
            tc.target_scale = config.noise.target_scale;
        }
        ProgressCallback progress;
        if (options.progress) {
            progress = [&](const FunctionOutcome &o) {
                *options.progress << "function " << o.index << " loss "
                                  << std::setprecision(6) << o.final_loss << " epochs "
                                  << o.epochs_run << '\n';
            };
        }
        const CapabilityResult r = learning_capability(config.ansatz, functions, tc,
                                                       workers, config.seed, progress);
        json runs = json::array();
        for (const auto &o : r.runs) {
            runs.push_back({{"index", o.index},
                            {"seed", o.seed},
                            {"final_loss", o.final_loss},
                            {"epochs_run", o.epochs_run}});
        }
        json doc = metadata(config);
        doc["degree"] = r.degree;
        doc["functions"] = functions.size();
        doc["mu"] = r.mu;
        doc["ci_half_width"] = r.ci.half_width;
        doc["ci_defined"] = r.ci.defined;
        doc["histogram"] = histogram_json(r.histogram);
        doc["runs"] = runs;
        emit("result.json", dump(doc));
        std::ostringstream table;
        write_capability_table(table, r);
        emit("losses.csv", table.str());
        out << "mu_" << r.degree << " = " << std::setprecision(6) << r.mu << " +- "
            << r.ci.half_width << (r.ci.defined ? "" : " (single function)")
            << " over " << functions.size() << " functions\n";
        break;
    }
    case ExperimentKind::Coeffs: {
        CounterRng rng(config.seed);
        const CoefficientStudy s =
            coefficient_study(config.ansatz, config.degree, config.coeff_samples, rng);
        json freqs = json::array();
        std::ostringstream table;
        table << std::setprecision(17) << "sample,omega,re,im\n";
        for (std::size_t k = 0; k < s.samples.size(); ++k) {
            for (std::size_t w = 0; w < s.samples[k].size(); ++w) {
                table << k << ',' << w << ',' << s.samples[k][w].real() << ','
                      << s.samples[k][w].imag() << '\n';
            }
        }
        out << "omega max|Re| max|Im| frac(|c|>0.01)\n";
        for (const auto &f : s.per_frequency) {
            freqs.push_back({{"omega", f.omega},
                             {"max_abs_re", f.max_abs_re},
                             {"max_abs_im", f.max_abs_im},
                             {"fraction_nonzero", f.fraction_nonzero}});
            out << f.omega << ' ' << std::setprecision(6) << f.max_abs_re << ' '
                << f.max_abs_im << ' ' << f.fraction_nonzero << '\n';
        }
        json doc = metadata(config);
        doc["per_frequency"] = freqs;
        emit("coeffs.json", dump(doc));
        emit("coeffs.csv", table.str());
        break;
    }
    case ExperimentKind::Barren: {
        const auto functions = function_set(config);
        CounterRng rng(config.seed);
        const BarrenProbeResult r = barren_variance(
            config.ansatz, functions, config.barren_trials, rng, config.barren_mode);
        json doc = metadata(config);
        doc["variance_of_gradient"] = r.variance_of_gradient;
        doc["sample_count"] = r.sample_count;
        doc["probe_parameter"] = r.probe_parameter;
        emit("barren.json", dump(doc));
        std::ostringstream table;
        table << std::setprecision(17)
              << "num_qubits,variance_of_gradient,sample_count\n"
              << num_qubits_of(config.ansatz) << ',' << r.variance_of_gradient << ','
              << r.sample_count << '\n';
        emit("barren.csv", table.str());
        out << "gradient variance " << std::setprecision(6) << r.variance_of_gradient
            << " over " << r.sample_count << " samples\n";
        break;
    }
    case ExperimentKind::Counts: {
        const Circuit c = build(config.ansatz);
        const ResourceCount rc = count_resources(c);
        json doc = metadata(config);
        doc["s"] = rc.single_qubit_gates;
        doc["t"] = rc.two_qubit_gates;
        doc["p"] = rc.trainable_params;
        doc["max_degree"] = max_degree(c);
        emit("counts.json", dump(doc));
        std::ostringstream table;
        table << "s,t,p,max_degree\n"
              << rc.single_qubit_gates << ',' << rc.two_qubit_gates << ','
              << rc.trainable_params << ',' << max_degree(c) << '\n';
        emit("counts.csv", table.str());
        out << "s=" << rc.single_qubit_gates << " t=" << rc.two_qubit_gates
            << " p=" << rc.trainable_params << '\n';
        break;
    }
    case ExperimentKind::FourierGen: {
        const auto functions = function_set(config);
        std::ostringstream series;
        write_series_set(series, functions);
        emit("functions.txt", series.str());
        const CrossCorrelationReport rep = cross_correlation_report(functions);
        double worst = 0.0;
        for (const auto &g : functions) {
            worst = std::max(worst, std::abs(max_abs(g) - 1.0));
        }
        json doc = metadata(config);
        doc["count"] = functions.size();
        doc["max_normalization_error"] = worst;
        doc["cross_correlation_histogram"] = rep.histogram;
        doc["cross_correlation_upper"] = rep.upper;
        emit("fourier.json", dump(doc));
        std::ostringstream table;
        table << "bin_lo,bin_hi,count\n";
        out << "cross-correlation histogram over "
            << functions.size() * (functions.size() - 1) / 2 << " pairs\n";
        for (std::size_t b = 0; b < rep.histogram.size(); ++b) {
            table << std::setprecision(2) << b / 10.0 << ',' << (b + 1) / 10.0 << ','
                  << rep.histogram[b] << '\n';
            out << '[' << std::fixed << std::setprecision(1) << b / 10.0 << ", "
                << (b + 1) / 10.0 << ") " << rep.histogram[b] << '\n';
            out.unsetf(std::ios::floatfield);
        }
        emit("crosscorr.csv", table.str());
        break;
    }
    case ExperimentKind::Dla: {
        const Circuit c = build(config.ansatz);
        const auto gens = generators_for(c);
        const std::size_t n = c.num_qubits();
        const std::size_t dim = lie_closure(gens);
        json names = json::array();
        out << "generators:";
        for (const auto &g : gens) {
            names.push_back(g.str());
            out << ' ' << g.str();
        }
        out << "\ndimension " << dim << " (4^n - 1 = " << ((std::size_t{1} << (2 * n)) - 1)
            << ")\n";
        json doc = metadata(config);
        doc["generators"] = names;
        doc["dimension"] = dim;
        doc["full_dimension"] = (std::size_t{1} << (2 * n)) - 1;
        emit("dla.json", dump(doc));
        std::ostringstream table;
        table << "num_qubits,num_generators,dimension\n"
              << n << ',' << gens.size() << ',' << dim << '\n';
        emit("dla.csv", table.str());
        break;
    }
    }
    return written;
}

} // namespace lcap
