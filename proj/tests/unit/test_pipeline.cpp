#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "subq/ci_matrix.hpp"
#include "subq/errors.hpp"
#include "subq/pipeline.hpp"

using namespace subq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("qubit requirement formula") {
    CHECK(report_qubits(7992) == 14);
    CHECK(report_qubits(78832) == 18);
    CHECK(report_qubits(2) == 2);
    CHECK(report_qubits(1) == 1);
    CHECK_THROWS_AS(report_qubits(0), ValidationError);
}

TEST_CASE("energy error thresholds") {
    CHECK(energy_error(-1.5, -1.5).error == 0.0);
    CHECK(energy_error(-1.5, -1.5).within_chemical_accuracy);
    CHECK(energy_error(0.0016, 0.0).within_chemical_accuracy); // at the threshold
    CHECK_FALSE(energy_error(-1.5, -1.502).within_chemical_accuracy);
}

TEST_CASE("exact mode on a loaded matrix matches the dense oracle") {
    const auto dense = test::random_symmetric(6, 900);
    const auto cim = test::cim_from_dense(dense);
    TempDir dir("subq_exact_mode");
    fs::create_directories(dir.path);
    const auto matrix_path = dir.path / "input.cim";
    save_matrix(cim, matrix_path.string());

    RunConfig config;
    config.input_matrix = matrix_path.string();
    config.mode = RunMode::exact;
    const auto report = run(config);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].subspace_size == 6);
    CHECK(report.rows[0].energy ==
          doctest::Approx(test::dense_ground_energy(dense.cast<double>())).epsilon(1e-6));
    CHECK(report.rows[0].qubits == report_qubits(6));
    CHECK(report.rows[0].gate_count == 0);
}

TEST_CASE("config validation happens up front") {
    RunConfig config;
    CHECK_THROWS_AS(run(config), ValidationError); // no input

    config.input_matrix = "x.cim";
    config.input_fcidump = "y.fcidump";
    CHECK_THROWS_AS(run(config), ValidationError); // both inputs

    RunConfig hci_config;
    hci_config.input_matrix = "x.cim";
    hci_config.mode = RunMode::hci; // epsilon missing
    CHECK_THROWS_AS(run(hci_config), ValidationError);

    RunConfig bad_fraction;
    bad_fraction.input_matrix = "x.cim";
    bad_fraction.mode = RunMode::qsci;
    bad_fraction.fractions = {1.5};
    CHECK_THROWS_AS(run(bad_fraction), ValidationError);
}

TEST_CASE("stage errors carry the stage identity") {
    RunConfig config;
    config.input_matrix = "/nonexistent/path.cim";
    config.mode = RunMode::exact;
    try {
        run(config);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("stage load") != std::string::npos);
    }
}

TEST_CASE("qsci run is deterministic and self-consistent") {
    const auto data_dir = std::string(SUBQ_TEST_DATA_DIR);
    TempDir dir_a("subq_det_a");
    TempDir dir_b("subq_det_b");

    RunConfig config;
    config.input_fcidump = data_dir + "/h2_sto3g.fcidump";
    config.mode = RunMode::qsci;
    config.fractions = {0.5, 1.0};
    config.n_loops = 3;
    config.n_batches = 5;
    config.shots = 400;
    config.seed = 1234;
    config.readout_flip_prob = 0.02;

    config.output_dir = dir_a.path.string();
    const auto report_a = run(config);
    config.output_dir = dir_b.path.string();
    const auto report_b = run(config);

    CHECK(report_a.to_csv() == report_b.to_csv());
    for (const char* name : {"report.csv", "counts_raw.txt", "counts_valid.txt",
                             "mitigation.txt", "qsci_loops.csv"})
        CHECK(slurp(dir_a.path / name) == slurp(dir_b.path / name));

    REQUIRE(report_a.rows.size() == 2);
    for (const auto& row : report_a.rows) {
        CHECK(row.qubits == report_qubits(row.n));
        CHECK(row.gate_count == row.depth * (row.shots_total / config.shots));
        CHECK(row.shots_retained <= row.shots_total);
        REQUIRE(row.error_vs_exact.has_value());
        CHECK(*row.error_vs_exact >= 0.0);
    }
    // interlacing at nested fractions under identical seeds
    CHECK(report_a.rows[0].energy >= report_a.rows[1].energy - 1e-12);

    const auto csv = slurp(dir_a.path / "report.csv");
    CHECK(csv.find("# subq-report v1") != std::string::npos);
    CHECK(csv.find("mode,parameter_name,parameter") != std::string::npos);
}

TEST_CASE("qshci and hci modes produce iteration artifacts") {
    const auto data_dir = std::string(SUBQ_TEST_DATA_DIR);
    TempDir dir("subq_modes");

    RunConfig config;
    config.input_fcidump = data_dir + "/h2_sto3g.fcidump";
    config.mode = RunMode::qshci;
    config.shots = 500;
    config.seed = 5;
    config.output_dir = dir.path.string();
    const auto report = run(config);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].parameter_name == "variance_factor");
    CHECK(fs::exists(dir.path / "iterations.csv"));
    CHECK(fs::exists(dir.path / "selection.txt"));
    REQUIRE(report.rows[0].error_vs_exact.has_value());

    RunConfig classical;
    classical.input_fcidump = data_dir + "/h2_sto3g.fcidump";
    classical.mode = RunMode::hci;
    classical.epsilon = 0.0;
    const auto hci_report = run(classical);
    REQUIRE(hci_report.rows.size() == 1);
    CHECK(*hci_report.rows[0].error_vs_exact <= 1e-8);
    CHECK(hci_report.rows[0].shots_total == 0);
}

TEST_CASE("failed runs leave no partial outputs") {
    TempDir dir("subq_partial");
    RunConfig config;
    config.input_matrix = "/nonexistent/path.cim";
    config.mode = RunMode::exact;
    config.output_dir = dir.path.string();
    CHECK_THROWS_AS(run(config), ValidationError);
    CHECK((!fs::exists(dir.path) || fs::is_empty(dir.path)));
}
