// Copyright 2026 The qaekit authors
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

#include "qaekit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "qaekit/fidelity.hpp"
#include "qaekit/gibbs.hpp"
#include "qaekit/qae.hpp"
#include "qaekit/qfi.hpp"
#include "qaekit/version.hpp"

namespace qaekit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config access with field-path diagnostics.

class ConfigView {
  public:
    ConfigView(const json& node, std::string path)
        : node_(&node), path_(std::move(path)) {}

    const json& raw() const { return *node_; }
    const std::string& path() const { return path_; }

    bool has(const std::string& key) const { return node_->contains(key); }

    ConfigView child(const std::string& key) const {
        if (!node_->is_object()) {
            raise(ErrorCode::InvalidArgument, path_ + ": expected an object");
        }
        if (!node_->contains(key)) {
            raise(ErrorCode::InvalidArgument,
                  path_ + "." + key + ": missing required field");
        }
        return ConfigView((*node_)[key], path_ + "." + key);
    }

    template <typename T>
    T get(const std::string& key) const {
        ConfigView c = child(key);
        try {
            return c.raw().get<T>();
        } catch (const json::exception&) {
            raise(ErrorCode::InvalidArgument, c.path() + ": wrong type");
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) const {
        if (!has(key)) return fallback;
        return get<T>(key);
    }

  private:
    const json* node_;
    std::string path_;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// State specs.

DensityOperator build_state(const ConfigView& spec, std::uint64_t default_seed) {
    const std::string kind = spec.get<std::string>("kind");
    if (kind == "noisy") {
        const int n = spec.get<int>("num_qubits");
        const std::string base_kind = spec.get_or<std::string>("base", "zero");
        const std::uint64_t base_seed =
            spec.get_or<std::uint64_t>("base_seed", default_seed);
        PureState base = PureState::zero(1);
        if (base_kind == "zero") {
            base = PureState::zero(n);
        } else if (base_kind == "one-excitation") {
            base = random_one_excitation_state(n, base_seed);
        } else {
            raise(ErrorCode::InvalidArgument,
                  spec.path() + ".base: unknown base state '" + base_kind + "'");
        }
        return build_noisy_state(NoisyStateSpec(
            std::move(base), spec.get<double>("p"), spec.get<int>("r"),
            spec.get<double>("a"), base_seed));
    }
    if (kind == "random") {
        const int n = spec.get<int>("num_qubits");
        const int rank = spec.get<int>("rank");
        Rng rng(spec.get_or<std::uint64_t>("state_seed", default_seed));
        return random_density_operator(n, rank, rng);
    }
    if (kind == "pure-random") {
        const int n = spec.get<int>("num_qubits");
        Rng rng(spec.get_or<std::uint64_t>("state_seed", default_seed));
        return DensityOperator::from_pure(random_pure_state(n, rng));
    }
    if (kind == "maximally-mixed") {
        return DensityOperator::maximally_mixed(spec.get<int>("num_qubits"));
    }
    raise(ErrorCode::InvalidArgument,
          spec.path() + ".kind: unknown state kind '" + kind + "'");
}

int numerical_rank(const DensityOperator& rho) {
    SpectralDecomposition eig = eig_hermitian(rho.matrix());
    int rank = 0;
    for (std::int64_t i = 0; i < eig.dim(); ++i) {
        if (eig.eigenvalues()(i) > 1e-12) ++rank;
    }
    return rank;
}

QaeConfig parse_qae_config(const ConfigView& view, int num_qubits,
                           std::uint64_t seed) {
    QaeConfig config;
    config.num_qubits = num_qubits;
    config.latent_qubits = view.get<int>("latent_qubits");
    config.layers = view.get_or<int>("layers", 5);
    config.learning_rate = view.get_or<double>("learning_rate", 0.8);
    config.iterations = view.get_or<int>("iterations", 200);
    config.seed = seed;
    config.validate();
    return config;
}

PauliHamiltonian parse_hamiltonian(const ConfigView& parent,
                                   const std::string& key, int num_qubits) {
    ConfigView view = parent.child(key);
    if (view.raw().is_array()) {
        std::string text;
        for (const auto& line : view.raw()) {
            if (!line.is_string()) {
                raise(ErrorCode::InvalidArgument,
                      view.path() + ": expected an array of strings");
            }
            text += line.get<std::string>();
            text += "\n";
        }
        return PauliHamiltonian::parse(text, num_qubits);
    }
    if (view.raw().is_object() && view.has("z_terms")) {
        return PauliHamiltonian::z_sum(num_qubits, view.get<int>("z_terms"));
    }
    raise(ErrorCode::InvalidArgument,
          view.path() + ": expected term lines or {\"z_terms\": J}");
}

struct CommonFields {
    std::string protocol;
    std::uint64_t seed = 1;
    int repeat = 1;
};

CommonFields parse_common(const ConfigView& root) {
    CommonFields out;
    out.protocol = root.get<std::string>("protocol");
    out.seed = root.get_or<std::uint64_t>("seed", 1);
    out.repeat = root.get_or<int>("repeat", 1);
    if (out.repeat < 1) {
        raise(ErrorCode::InvalidArgument,
              root.path() + ".repeat: must be >= 1");
    }
    const int schema = root.get_or<int>("schema_version", 1);
    if (schema != 1) {
        raise(ErrorCode::InvalidArgument,
              root.path() + ".schema_version: unsupported version");
    }
    return out;
}

void summarize(ExperimentRecord& record, const std::string& key, double value) {
    record.summary.emplace_back(key, format_double(value));
}

// ---------------------------------------------------------------------------
// Protocol runners. Each appends rows in place so a failure still leaves a
// partial record behind.

void run_train_qae(const ConfigView& root, const CommonFields& common,
                   ExperimentRecord& record) {
    const DensityOperator rho =
        build_state(root.child("state"), common.seed);
    record.columns = {"seed", "iter", "loss"};
    double final_loss = 0.0;
    for (int rep = 0; rep < common.repeat; ++rep) {
        const std::uint64_t seed = common.seed + rep;
        QaeConfig config =
            parse_qae_config(root.child("qae"), rho.num_qubits(), seed);
        QaeModel model = train(rho, config);
        for (std::size_t i = 0; i < model.loss_trace.size(); ++i) {
            record.rows.push_back({static_cast<double>(seed),
                                   static_cast<double>(i),
                                   model.loss_trace[i]});
        }
        final_loss = model.final_loss;
        if (root.has("save_model")) {
            std::string path = root.get<std::string>("save_model");
            if (common.repeat > 1) {
                path += ".seed" + std::to_string(seed);
            }
            save_model_file(model, path);
        }
    }
    summarize(record, "final_loss", final_loss);
}

void run_fidelity(const ConfigView& root, const CommonFields& common,
                  ExperimentRecord& record, bool resource_efficient) {
    const DensityOperator rho = build_state(root.child("rho"), common.seed);
    const DensityOperator kappa =
        build_state(root.child("kappa"), common.seed + 1);
    const double exact = uhlmann_fidelity(rho, kappa);
    const double ssfb_lower = sub_fidelity(rho, kappa);
    const double ssfb_upper = super_fidelity(rho, kappa);
    const int rank_rho = numerical_rank(rho);

    record.columns = {"seed",  "n",     "k",     "delta", "qaef", "qaefl",
                      "qaefu", "exact", "ssfbl", "ssfbu", "subcapacity"};

    double err_sum = 0.0;
    bool band_inside_ssfb = true;
    for (int rep = 0; rep < common.repeat; ++rep) {
        const std::uint64_t seed = common.seed + rep;
        QaeConfig config =
            parse_qae_config(root.child("qae"), rho.num_qubits(), seed);
        FidelityEstimate est;
        if (resource_efficient) {
            QaeConfig config_kappa =
                root.has("qae_kappa")
                    ? parse_qae_config(root.child("qae_kappa"),
                                       kappa.num_qubits(), seed)
                    : config;
            est = estimate_fidelity_resource_efficient(rho, kappa, config,
                                                       config_kappa);
        } else {
            est = estimate_fidelity_qae(rho, kappa, config);
        }
        const bool subcapacity =
            (std::int64_t{1} << config.latent_qubits) < rank_rho;
        record.rows.push_back({static_cast<double>(seed),
                               static_cast<double>(rho.num_qubits()),
                               static_cast<double>(config.latent_qubits),
                               est.delta,
                               est.value,
                               est.lower,
                               est.upper,
                               exact,
                               ssfb_lower,
                               ssfb_upper,
                               subcapacity ? 1.0 : 0.0});
        err_sum += std::abs(est.value - exact);
        band_inside_ssfb = band_inside_ssfb && est.lower > ssfb_lower &&
                           est.upper < ssfb_upper;
    }
    summarize(record, "exact_fidelity", exact);
    summarize(record, "mean_abs_err", err_sum / common.repeat);
    record.summary.emplace_back("band_inside_ssfb",
                                band_inside_ssfb ? "1" : "0");
}

void run_gibbs(const ConfigView& root, const CommonFields& common,
               ExperimentRecord& record) {
    const ConfigView block = root.child("gibbs");
    const int sites = block.get_or<int>(
        "ising_sites", block.has("hamiltonian") ? 0 : 3);
    PauliHamiltonian h = block.has("hamiltonian")
                             ? parse_hamiltonian(block, "hamiltonian",
                                                 block.get<int>("num_qubits"))
                             : PauliHamiltonian::ising_chain(sites);

    record.columns = {"seed",     "iter",  "f_r", "f_r_exact",
                      "fidelity", "delta", "oracle_fallback"};
    double min_final = 1.0;
    double final_fidelity = 0.0;
    int discrepancy_violations = 0;
    GibbsResult last;
    for (int rep = 0; rep < common.repeat; ++rep) {
        const std::uint64_t seed = common.seed + rep;
        GibbsConfig config{h};
        config.beta = block.get<double>("beta");
        config.truncation = block.get_or<int>("truncation", 2);
        config.outer_iterations = block.get_or<int>("outer_iterations", 200);
        config.outer_lr = block.get_or<double>("outer_lr", 0.2);
        config.ansatz_layers = block.get_or<int>("ansatz_layers", 5);
        config.ancilla_qubits = block.get_or<int>("ancilla_qubits", 1);
        config.warm_start = block.get_or<bool>("warm_start", true);
        config.use_main_text_entropy =
            block.get_or<bool>("use_main_text_entropy", false);
        const std::string source =
            block.get_or<std::string>("eigen_source", "qae");
        if (source == "qae") {
            config.eigen_source = EigenSource::Qae;
            config.qae = parse_qae_config(block.child("qae"), h.num_qubits(),
                                          seed);
            config.qae.iterations = block.child("qae").get_or<int>(
                "iterations", 100);
        } else if (source == "exact-oracle") {
            config.eigen_source = EigenSource::ExactOracle;
        } else {
            raise(ErrorCode::InvalidArgument,
                  block.path() + ".eigen_source: unknown source '" + source +
                      "'");
        }
        config.seed = seed;
        config.validate();

        GibbsResult result = solve_gibbs(config);
        for (const GibbsIterationRow& row : result.trace) {
            record.rows.push_back({static_cast<double>(seed),
                                   static_cast<double>(row.iteration),
                                   row.free_energy, row.free_energy_exact,
                                   row.fidelity, row.delta,
                                   row.oracle_fallback ? 1.0 : 0.0});
        }
        final_fidelity = result.final_fidelity;
        min_final = std::min(min_final, result.final_fidelity);
        discrepancy_violations += result.discrepancy_violations;
        last = std::move(result);
    }
    summarize(record, "final_fidelity", final_fidelity);
    summarize(record, "min_final_fidelity", min_final);
    summarize(record, "epsilon1_surrogate", last.epsilon1_surrogate);
    summarize(record, "fidelity_bound", last.fidelity_bound);
    summarize(record, "fidelity_bound_compact", last.fidelity_bound_compact);
    record.summary.emplace_back("epsilon1_is_surrogate", "1");
    record.summary.emplace_back("discrepancy_violations",
                                std::to_string(discrepancy_violations));
}

void run_qfi(const ConfigView& root, const CommonFields& common,
             ExperimentRecord& record) {
    const ConfigView block = root.child("qfi");
    const int n = block.get<int>("probe_qubits");
    record.columns = {"seed", "iter", "surrogate", "oracle_qfi", "delta",
                      "band"};
    double final_surrogate = 0.0;
    double final_oracle = 0.0;
    for (int rep = 0; rep < common.repeat; ++rep) {
        const std::uint64_t seed = common.seed + rep;
        QfiConfig config{n, parse_hamiltonian(block, "generator", n)};
        config.theta = block.get_or<double>("theta", 0.1);
        config.tau = block.get_or<double>("tau", 1e-2);
        config.outer_iterations = block.get_or<int>("outer_iterations", 75);
        config.outer_lr = block.get_or<double>("outer_lr", 0.01);
        config.ansatz_layers = block.get_or<int>("ansatz_layers", 5);
        const std::string method =
            block.get_or<std::string>("fidelity_method", "exact");
        if (method == "exact") {
            config.fidelity_method = FidelityMethod::Exact;
        } else if (method == "qae") {
            config.fidelity_method = FidelityMethod::Qae;
            config.qae = parse_qae_config(block.child("qae"), n, seed);
            config.qae.iterations =
                block.child("qae").get_or<int>("iterations", 100);
        } else {
            raise(ErrorCode::InvalidArgument,
                  block.path() + ".fidelity_method: unknown method '" + method +
                      "'");
        }
        config.seed = seed;
        config.validate();

        QfiResult result = optimize_probe(config);
        for (const QfiIterationRow& row : result.trace) {
            record.rows.push_back({static_cast<double>(seed),
                                   static_cast<double>(row.iteration),
                                   row.surrogate, row.oracle_qfi, row.delta,
                                   row.band});
        }
        if (result.aborted) {
            raise(ErrorCode::ProtocolFailure,
                  "qfi: embedded estimator failed twice; run aborted");
        }
        final_surrogate = result.trace.back().surrogate;
        final_oracle = result.trace.back().oracle_qfi;
    }
    summarize(record, "final_surrogate", final_surrogate);
    summarize(record, "final_oracle_qfi", final_oracle);
}

} // namespace

const char* build_id() { return QAEKIT_BUILD_ID; }

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::Io, "config: cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

json parse_config(const std::string& text) {
    json parsed = json::parse(text, nullptr, false, true);
    if (parsed.is_discarded()) {
        raise(ErrorCode::Parse, "config: invalid JSON");
    }
    if (!parsed.is_object()) {
        raise(ErrorCode::Parse, "config: top level must be an object");
    }
    return parsed;
}

void apply_override(json& config, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        raise(ErrorCode::InvalidArgument,
              "override '" + assignment + "': expected path=value");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);
    json value = json::parse(value_text, nullptr, false, true);
    if (value.is_discarded()) {
        value = value_text; // keep unparseable values as strings
    }
    json* node = &config;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) {
            raise(ErrorCode::InvalidArgument,
                  "override '" + assignment + "': empty path segment");
        }
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

void apply_paper_scale(json& config) {
    const std::string protocol = config.value("protocol", "");
    if (protocol != "fidelity" && protocol != "fidelity-re") {
        raise(ErrorCode::InvalidArgument,
              "paper scale preset only applies to the fidelity protocols");
    }
    config["rho"] = {{"kind", "noisy"}, {"num_qubits", 8}, {"base", "zero"},
                     {"p", 0.1},        {"r", 8},          {"a", 2.0}};
    config["kappa"] = {{"kind", "noisy"},
                       {"num_qubits", 8},
                       {"base", "one-excitation"},
                       {"p", 0.5},
                       {"r", 16},
                       {"a", 5.0}};
    config["qae"]["layers"] = 5;
    config["qae"]["learning_rate"] = 0.8;
    config["qae"]["iterations"] = 200;
}

ExperimentRecord run_experiment(const json& config) {
    ConfigView root(config, "config");
    const CommonFields common = parse_common(root);
    ExperimentRecord record;
    record.protocol = common.protocol;
    record.build_id = QAEKIT_BUILD_ID;
    record.config_echo = config.dump();

    const auto started = std::chrono::steady_clock::now();
    try {
        if (common.protocol == "train-qae") {
            run_train_qae(root, common, record);
        } else if (common.protocol == "fidelity") {
            run_fidelity(root, common, record, false);
        } else if (common.protocol == "fidelity-re") {
            run_fidelity(root, common, record, true);
        } else if (common.protocol == "gibbs") {
            run_gibbs(root, common, record);
        } else if (common.protocol == "qfi") {
            run_qfi(root, common, record);
        } else {
            raise(ErrorCode::InvalidArgument,
                  "config.protocol: unknown protocol '" + common.protocol +
                      "'");
        }
    } catch (...) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        record.summary.emplace_back("status", "error");
        record.summary.emplace_back(
            "wall_time_s",
            format_double(std::chrono::duration<double>(elapsed).count()));
        throw;
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;
    record.summary.emplace_back("status", "ok");
    record.summary.emplace_back(
        "wall_time_s",
        format_double(std::chrono::duration<double>(elapsed).count()));
    return record;
}

ExperimentRecord run_experiment_to_file(const json& config,
                                        const std::string& out_path) {
    try {
        ExperimentRecord record = run_experiment(config);
        write_record(record, out_path);
        return record;
    } catch (const Error& e) {
        // Leave a machine-readable failure record behind.
        ExperimentRecord failure;
        failure.protocol = config.value("protocol", "unknown");
        failure.build_id = QAEKIT_BUILD_ID;
        failure.config_echo = config.dump();
        failure.summary.emplace_back("status", "error");
        failure.summary.emplace_back("error", e.what());
        try {
            write_record(failure, out_path);
        } catch (...) {
            // The original failure is the interesting one.
        }
        throw;
    }
}

std::vector<std::string> sweep_experiment(const json& base_config,
                                          const std::string& axis,
                                          const std::vector<std::string>& values,
                                          const std::string& out_path,
                                          int workers) {
    if (values.empty()) {
        raise(ErrorCode::InvalidArgument, "sweep: no axis values given");
    }
    if (workers < 1) workers = 1;

    // The axis must name an existing scalar field.
    {
        const json* node = &base_config;
        std::size_t start = 0;
        std::string walked;
        while (true) {
            const std::size_t dot = axis.find('.', start);
            const std::string key = axis.substr(
                start,
                dot == std::string::npos ? std::string::npos : dot - start);
            walked += walked.empty() ? key : "." + key;
            if (!node->is_object() || !node->contains(key)) {
                raise(ErrorCode::InvalidArgument,
                      "sweep axis 'config." + walked + "': no such field");
            }
            node = &(*node)[key];
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        if (!node->is_primitive()) {
            raise(ErrorCode::InvalidArgument,
                  "sweep axis 'config." + axis + "': not a scalar field");
        }
    }

    const fs::path base(out_path);
    const std::string stem = (base.parent_path() / base.stem()).string();
    const std::string ext =
        base.extension().empty() ? ".txt" : base.extension().string();

    std::string axis_tag = axis;
    std::replace(axis_tag.begin(), axis_tag.end(), '.', '-');
    std::vector<std::string> paths(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string value_tag = values[i];
        std::replace(value_tag.begin(), value_tag.end(), '.', 'p');
        paths[i] = stem + "." + axis_tag + "_" + value_tag + ext;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            try {
                json config = base_config;
                apply_override(config, axis + "=" + values[i]);
                run_experiment_to_file(config, paths[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int thread_count =
        std::min<int>(workers, static_cast<int>(values.size()));
    for (int i = 1; i < thread_count; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) {
        raise(ErrorCode::ProtocolFailure, "sweep: " + first_error);
    }

    const std::string index_path = stem + "." + axis_tag + "_index" + ext;
    std::ostringstream index;
    index << "# qaekit-sweep-index schema_version=" << kRecordSchemaVersion
          << "\n";
    index << "# axis " << axis << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        index << values[i] << " " << paths[i] << "\n";
    }
    std::ofstream out(index_path);
    if (!out) {
        raise(ErrorCode::Io, "sweep: cannot open index file " + index_path);
    }
    out << index.str();
    paths.push_back(index_path);
    return paths;
}

void write_record(const ExperimentRecord& record, const std::string& path) {
    const fs::path target(path);
    if (!target.parent_path().empty()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        if (ec) {
            raise(ErrorCode::Io,
                  "record: cannot create directory " +
                      target.parent_path().string());
        }
    }
    std::ostringstream body;
    body << "# qaekit-record schema_version=" << record.schema_version << "\n";
    body << "# protocol " << record.protocol << "\n";
    body << "# build " << record.build_id << "\n";
    body << "# config " << record.config_echo << "\n";
    if (!record.columns.empty()) {
        body << "# columns";
        for (const std::string& c : record.columns) body << " " << c;
        body << "\n";
        for (const auto& row : record.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) body << " ";
                body << format_double(row[i]);
            }
            body << "\n";
        }
    }
    body << "# summary";
    for (const auto& [key, value] : record.summary) {
        body << " " << key << "=" << value;
    }
    body << "\n";

    // Atomic publish: write a sibling temp file, then rename over the target.
    const std::string tmp_path =
        path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp_path, std::ios::trunc);
        if (!out) {
            raise(ErrorCode::Io, "record: cannot open " + tmp_path);
        }
        out << body.str();
        out.flush();
        if (!out.good()) {
            raise(ErrorCode::Io, "record: write failed for " + tmp_path);
        }
    }
    std::error_code ec;
    fs::rename(tmp_path, path, ec);
    if (ec) {
        fs::remove(tmp_path, ec);
        raise(ErrorCode::Io, "record: cannot rename into place: " + path);
    }
}

ExperimentRecord read_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::Io, "record: cannot open " + path);
    }
    ExperimentRecord record;
    record.schema_version = -1;
    std::string line;
    bool saw_columns = false;
    while (std::getline(in, line)) {
        if (line.rfind("# qaekit-record", 0) == 0) {
            const std::string tag = "schema_version=";
            const std::size_t pos = line.find(tag);
            if (pos == std::string::npos) {
                raise(ErrorCode::Parse, "record: missing schema_version");
            }
            record.schema_version = std::stoi(line.substr(pos + tag.size()));
            if (record.schema_version != kRecordSchemaVersion) {
                std::ostringstream msg;
                msg << "record: unknown schema major "
                    << record.schema_version << " (reader supports "
                    << kRecordSchemaVersion << ")";
                raise(ErrorCode::Parse, msg.str());
            }
        } else if (line.rfind("# protocol ", 0) == 0) {
            record.protocol = line.substr(11);
        } else if (line.rfind("# build ", 0) == 0) {
            record.build_id = line.substr(8);
        } else if (line.rfind("# config ", 0) == 0) {
            record.config_echo = line.substr(9);
        } else if (line.rfind("# columns", 0) == 0) {
            std::istringstream fields(line.substr(9));
            std::string name;
            while (fields >> name) record.columns.push_back(name);
            saw_columns = true;
        } else if (line.rfind("# summary", 0) == 0) {
            std::istringstream fields(line.substr(9));
            std::string pair;
            while (fields >> pair) {
                const std::size_t eq = pair.find('=');
                if (eq == std::string::npos) {
                    raise(ErrorCode::Parse, "record: bad summary entry " + pair);
                }
                record.summary.emplace_back(pair.substr(0, eq),
                                            pair.substr(eq + 1));
            }
        } else if (!line.empty() && line[0] != '#') {
            if (!saw_columns) {
                raise(ErrorCode::Parse, "record: data before column header");
            }
            std::istringstream fields(line);
            std::vector<double> row;
            double v = 0.0;
            while (fields >> v) row.push_back(v);
            if (row.size() != record.columns.size()) {
                raise(ErrorCode::Parse, "record: row width mismatch");
            }
            record.rows.push_back(std::move(row));
        }
    }
    if (record.schema_version < 0) {
        raise(ErrorCode::Parse, "record: missing qaekit-record header");
    }
    return record;
}

} // namespace qaekit
