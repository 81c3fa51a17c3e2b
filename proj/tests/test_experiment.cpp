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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaekit/experiment.hpp"

using namespace qaekit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "qaekit-test-records";
    fs::create_directories(dir);
    return dir;
}

json small_fidelity_config() {
    return parse_config(R"({
        "protocol": "fidelity",
        "seed": 3,
        "repeat": 2,
        "rho": {"kind": "noisy", "num_qubits": 3, "base": "zero",
                 "p": 0.1, "r": 2, "a": 2.0},
        "kappa": {"kind": "noisy", "num_qubits": 3, "base": "one-excitation",
                   "base_seed": 9, "p": 0.5, "r": 4, "a": 1.0},
        "qae": {"latent_qubits": 2, "layers": 4, "learning_rate": 0.8,
                 "iterations": 60}
    })");
}

// Rows must reproduce bit-exactly; the summary may differ (wall time).
std::string numeric_rows(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') rows << line << "\n";
    }
    return rows.str();
}

} // namespace

TEST_CASE("config parsing and validation diagnostics carry field paths") {
    CHECK_THROWS_AS(parse_config("not json"), Error);
    CHECK_THROWS_AS(parse_config("[1,2]"), Error);

    json config = small_fidelity_config();
    config.erase("rho");
    try {
        run_experiment(config);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("config.rho") != std::string::npos);
    }

    json bad_repeat = small_fidelity_config();
    bad_repeat["repeat"] = 0;
    CHECK_THROWS_AS(run_experiment(bad_repeat), Error);

    json bad_type = small_fidelity_config();
    bad_type["qae"]["latent_qubits"] = "two";
    try {
        run_experiment(bad_type);
        FAIL("expected a type error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("config.qae.latent_qubits") !=
              std::string::npos);
    }

    json unknown = small_fidelity_config();
    unknown["protocol"] = "mystery";
    CHECK_THROWS_AS(run_experiment(unknown), Error);
}

TEST_CASE("overrides address nested fields") {
    json config = small_fidelity_config();
    apply_override(config, "qae.iterations=25");
    CHECK_EQ(config["qae"]["iterations"], 25);
    apply_override(config, "kappa.p=0.25");
    CHECK_EQ(config["kappa"]["p"], 0.25);
    apply_override(config, "label=desk run");
    CHECK_EQ(config["label"], "desk run"); // unparseable JSON stays a string
    CHECK_THROWS_AS(apply_override(config, "no-equals"), Error);
}

TEST_CASE("fidelity records carry the documented columns") {
    json config = small_fidelity_config();
    ExperimentRecord record = run_experiment(config);
    const std::vector<std::string> expected = {
        "seed",  "n",     "k",     "delta", "qaef", "qaefl",
        "qaefu", "exact", "ssfbl", "ssfbu", "subcapacity"};
    CHECK(record.columns == expected);
    CHECK_EQ(record.rows.size(), 2); // one per replica
    for (const auto& row : record.rows) {
        CHECK_EQ(row.size(), expected.size());
        CHECK(row[7] >= 0.0); // exact fidelity
        CHECK(row[7] <= 1.0);
        CHECK_EQ(row[10], 0.0); // rank 2 <= 2^2: not sub-capacity
    }
    CHECK_EQ(record.protocol, "fidelity");
    bool found_status = false;
    for (const auto& [key, value] : record.summary) {
        if (key == "status") {
            found_status = true;
            CHECK_EQ(value, "ok");
        }
    }
    CHECK(found_status);
}

TEST_CASE("resource-efficient protocol shares the record shape") {
    json config = small_fidelity_config();
    config["protocol"] = "fidelity-re";
    config["repeat"] = 1;
    config["qae"]["iterations"] = 40;
    ExperimentRecord record = run_experiment(config);
    CHECK_EQ(record.protocol, "fidelity-re");
    REQUIRE_EQ(record.rows.size(), 1);
    const auto& row = record.rows[0];
    // The estimate and its band still bracket sensibly.
    CHECK(row[5] <= row[4]); // qaefl <= qaef
    CHECK(row[6] >= row[4]); // qaefu >= qaef
    CHECK(row[3] >= 0.0);    // delta = max of the two training losses
}

TEST_CASE("sub-capacity runs are flagged in the output") {
    json config = small_fidelity_config();
    config["rho"]["r"] = 8; // rank 8 > 2^2
    config["repeat"] = 1;
    config["qae"]["iterations"] = 20;
    ExperimentRecord record = run_experiment(config);
    CHECK_EQ(record.rows.at(0).at(10), 1.0);
}

TEST_CASE("records round-trip and reject unknown schema majors") {
    const fs::path dir = temp_dir();
    const std::string path = (dir / "roundtrip.txt").string();
    json config = small_fidelity_config();
    config["qae"]["iterations"] = 10;
    config["repeat"] = 1;
    ExperimentRecord record = run_experiment(config);
    write_record(record, path);

    ExperimentRecord loaded = read_record(path);
    CHECK_EQ(loaded.schema_version, kRecordSchemaVersion);
    CHECK(loaded.columns == record.columns);
    REQUIRE_EQ(loaded.rows.size(), record.rows.size());
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        for (std::size_t j = 0; j < record.rows[i].size(); ++j) {
            CHECK(loaded.rows[i][j] == record.rows[i][j]); // exact via %.17g
        }
    }
    CHECK_EQ(loaded.protocol, record.protocol);
    CHECK_EQ(loaded.config_echo, record.config_echo);

    // Unknown major is rejected.
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string tampered = buffer.str();
    tampered.replace(tampered.find("schema_version=1"),
                     std::string("schema_version=1").size(),
                     "schema_version=9");
    const std::string bad_path = (dir / "bad-schema.txt").string();
    std::ofstream out(bad_path);
    out << tampered;
    out.close();
    CHECK_THROWS_AS(read_record(bad_path), Error);
}

TEST_CASE("identical config and seed reproduce numeric rows byte-for-byte") {
    const fs::path dir = temp_dir();
    json config = small_fidelity_config();
    config["qae"]["iterations"] = 15;
    const std::string a = (dir / "repeat-a.txt").string();
    const std::string b = (dir / "repeat-b.txt").string();
    run_experiment_to_file(config, a);
    run_experiment_to_file(config, b);
    CHECK(numeric_rows(a) == numeric_rows(b));
    CHECK(!numeric_rows(a).empty());

    json other_seed = config;
    other_seed["seed"] = 4;
    const std::string c = (dir / "repeat-c.txt").string();
    run_experiment_to_file(other_seed, c);
    CHECK(numeric_rows(a) != numeric_rows(c));

    // No temp files are left behind by the atomic writes.
    for (const auto& entry : fs::directory_iterator(dir)) {
        CHECK(entry.path().string().find(".tmp.") == std::string::npos);
    }
}

TEST_CASE("train-qae protocol records a loss trace and saves models") {
    const fs::path dir = temp_dir();
    const std::string model_path = (dir / "model.txt").string();
    json config = parse_config(R"({
        "protocol": "train-qae",
        "seed": 2,
        "state": {"kind": "noisy", "num_qubits": 3, "base": "zero",
                   "p": 0.1, "r": 2, "a": 2.0},
        "qae": {"latent_qubits": 1, "layers": 4, "learning_rate": 0.8,
                 "iterations": 30}
    })");
    config["save_model"] = model_path;
    ExperimentRecord record = run_experiment(config);
    CHECK_EQ(record.rows.size(), 31); // initial + one per iteration
    CHECK(record.rows.back()[2] <= record.rows.front()[2]);
    CHECK(fs::exists(model_path));
}

TEST_CASE("gibbs protocol emits per-iteration rows with both objectives") {
    json config = parse_config(R"({
        "protocol": "gibbs",
        "seed": 2,
        "gibbs": {
            "ising_sites": 3,
            "beta": 1.5,
            "truncation": 2,
            "outer_iterations": 8,
            "outer_lr": 0.2,
            "ansatz_layers": 5,
            "ancilla_qubits": 1,
            "eigen_source": "exact-oracle"
        }
    })");
    ExperimentRecord record = run_experiment(config);
    CHECK_EQ(record.rows.size(), 9);
    const auto& last = record.rows.back();
    CHECK(last[2] == last[3]); // oracle mode: both objectives identical
    CHECK(last[4] > 0.0);      // fidelity column
    CHECK_EQ(last[6], 0.0);    // no fallback

    json qae_config = config;
    qae_config["gibbs"]["eigen_source"] = "qae";
    qae_config["gibbs"]["outer_iterations"] = 3;
    qae_config["gibbs"]["qae"] = {{"latent_qubits", 2},
                                  {"layers", 4},
                                  {"learning_rate", 0.2},
                                  {"iterations", 40}};
    ExperimentRecord qae_record = run_experiment(qae_config);
    CHECK_EQ(qae_record.rows.size(), 4);
    CHECK(qae_record.rows.back()[5] >= 0.0); // recorded inner loss
}

TEST_CASE("qfi protocol records surrogate and oracle trajectories") {
    json config = parse_config(R"({
        "protocol": "qfi",
        "seed": 1,
        "qfi": {
            "probe_qubits": 3,
            "generator": {"z_terms": 3},
            "theta": 0.1,
            "tau": 0.01,
            "outer_iterations": 10,
            "outer_lr": 0.01,
            "ansatz_layers": 5,
            "fidelity_method": "exact"
        }
    })");
    ExperimentRecord record = run_experiment(config);
    CHECK_EQ(record.rows.size(), 11);
    CHECK(record.rows.back()[2] > record.rows.front()[2]); // surrogate rises
}

TEST_CASE("sweep writes one record per value plus an index") {
    const fs::path dir = temp_dir();
    json config = small_fidelity_config();
    config["repeat"] = 1;
    config["qae"]["iterations"] = 10;
    const std::string out = (dir / "sweep.txt").string();
    std::vector<std::string> paths = sweep_experiment(
        config, "qae.latent_qubits", {"1", "2"}, out, 2);
    REQUIRE_EQ(paths.size(), 3); // two records + index
    for (const std::string& p : paths) {
        CHECK(fs::exists(p));
    }
    ExperimentRecord first = read_record(paths[0]);
    CHECK_EQ(first.rows.at(0).at(2), 1.0); // k column
    ExperimentRecord second = read_record(paths[1]);
    CHECK_EQ(second.rows.at(0).at(2), 2.0);

    CHECK_THROWS_AS(
        sweep_experiment(config, "qae.no_such_field", {"1"}, out, 1), Error);
    CHECK_THROWS_AS(sweep_experiment(config, "qae", {"1"}, out, 1), Error);
    CHECK_THROWS_AS(sweep_experiment(config, "qae.latent_qubits", {}, out, 1),
                    Error);
}

TEST_CASE("paper-scale preset swaps in the full-size construction") {
    json config = small_fidelity_config();
    apply_paper_scale(config);
    CHECK_EQ(config["rho"]["num_qubits"], 8);
    CHECK_EQ(config["kappa"]["r"], 16);
    CHECK_EQ(config["qae"]["iterations"], 200);
    json gibbs = parse_config(R"({"protocol": "gibbs"})");
    CHECK_THROWS_AS(apply_paper_scale(gibbs), Error);
}

TEST_CASE("failed runs leave a machine-readable error record") {
    const fs::path dir = temp_dir();
    const std::string path = (dir / "failure.txt").string();
    json config = small_fidelity_config();
    config["rho"]["r"] = 99; // out of range for 3 qubits
    CHECK_THROWS_AS(run_experiment_to_file(config, path), Error);
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str().find("status=error") != std::string::npos);
}
