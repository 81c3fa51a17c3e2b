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

// Experiment runner on top of the qaekit C API. Each subcommand loads a JSON
// config file, applies CLI overrides, runs the protocol and writes one
// results file (plain text, one column header plus numeric rows).

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaekit/qaekit.h"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool paper_scale = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_path,
                    "results file (overrides config.output)");
    cmd->add_option("--set", args.overrides,
                    "config override, dotted.path=value (repeatable)");
    cmd->add_option("--seed", args.seed, "override config.seed")
        ->each([&args](const std::string&) { args.has_seed = true; });
}

std::vector<const char*> collect_overrides(const CommonArgs& args,
                                           const std::string& protocol,
                                           std::vector<std::string>& storage) {
    storage.clear();
    storage.push_back("protocol=" + protocol);
    if (args.has_seed) {
        storage.push_back("seed=" + std::to_string(args.seed));
    }
    for (const std::string& o : args.overrides) storage.push_back(o);
    std::vector<const char*> out;
    out.reserve(storage.size());
    for (const std::string& s : storage) out.push_back(s.c_str());
    return out;
}

int run_protocol(const CommonArgs& args, const std::string& protocol) {
    std::vector<std::string> storage;
    std::vector<const char*> overrides =
        collect_overrides(args, protocol, storage);
    const qaekit_status status = qaekit_experiment_run(
        args.config_path.c_str(), overrides.data(),
        static_cast<int>(overrides.size()),
        args.out_path.empty() ? nullptr : args.out_path.c_str(),
        args.paper_scale ? 1 : 0);
    if (status != QAEKIT_OK) {
        std::fprintf(stderr, "error (%s): %s\n", qaekit_status_name(status),
                     qaekit_last_error());
        return status == QAEKIT_ERROR_INVALID_ARGUMENT ? 2 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qaekit: auto-encoder based estimation protocols"};
    app.set_version_flag("--version", std::string("qaekit ") + qaekit_version() +
                                          " (" + qaekit_build_id() + ")");
    app.require_subcommand(1);

    CommonArgs train_args;
    CLI::App* train = app.add_subcommand(
        "train-qae", "train an auto-encoder and record the loss trace");
    add_common(train, train_args);

    CommonArgs fid_args;
    CLI::App* fid = app.add_subcommand(
        "fidelity", "auto-encoder fidelity estimate with certainty band");
    add_common(fid, fid_args);
    fid->add_flag("--paper-scale", fid_args.paper_scale,
                  "swap in the full-size 8-qubit reference setup");

    CommonArgs fre_args;
    CLI::App* fre = app.add_subcommand(
        "fidelity-re", "resource-efficient fidelity estimate (both states "
                       "encoded)");
    add_common(fre, fre_args);
    fre->add_flag("--paper-scale", fre_args.paper_scale,
                  "swap in the full-size 8-qubit reference setup");

    CommonArgs gibbs_args;
    CLI::App* gibbs = app.add_subcommand(
        "gibbs", "variational Gibbs-state preparation");
    add_common(gibbs, gibbs_args);

    CommonArgs qfi_args;
    CLI::App* qfi = app.add_subcommand(
        "qfi", "Fisher-information probe optimization");
    add_common(qfi, qfi_args);

    CommonArgs sweep_args;
    std::string axis;
    std::string values;
    int workers = 1;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run one experiment per value of a config field");
    add_common(sweep, sweep_args);
    sweep->add_option("--axis", axis, "dotted config path to sweep")
        ->required();
    sweep->add_option("--values", values, "comma-separated axis values")
        ->required();
    sweep->add_option("--workers", workers, "parallel runs")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) return run_protocol(train_args, "train-qae");
    if (fid->parsed()) return run_protocol(fid_args, "fidelity");
    if (fre->parsed()) return run_protocol(fre_args, "fidelity-re");
    if (gibbs->parsed()) return run_protocol(gibbs_args, "gibbs");
    if (qfi->parsed()) return run_protocol(qfi_args, "qfi");
    if (sweep->parsed()) {
        std::vector<std::string> storage;
        storage.reserve(sweep_args.overrides.size() + 1);
        if (sweep_args.has_seed) {
            storage.push_back("seed=" + std::to_string(sweep_args.seed));
        }
        for (const std::string& o : sweep_args.overrides) storage.push_back(o);
        std::vector<const char*> overrides;
        for (const std::string& s : storage) overrides.push_back(s.c_str());
        const qaekit_status status = qaekit_experiment_sweep(
            sweep_args.config_path.c_str(), axis.c_str(), values.c_str(),
            overrides.data(), static_cast<int>(overrides.size()),
            sweep_args.out_path.empty() ? nullptr : sweep_args.out_path.c_str(),
            workers);
        if (status != QAEKIT_OK) {
            std::fprintf(stderr, "error (%s): %s\n", qaekit_status_name(status),
                         qaekit_last_error());
            return status == QAEKIT_ERROR_INVALID_ARGUMENT ? 2 : 1;
        }
        return 0;
    }
    return 2;
}
