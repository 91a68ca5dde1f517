#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qsearch/experiment.hpp"
#include "qsearch/synthesis.hpp"

using namespace qsearch;

namespace {

ExperimentConfig tiny_sweep_config() {
    ExperimentConfig cfg;
    cfg.algorithms = {Algorithm::Qcpa, Algorithm::Grover};
    cfg.qubits = {2};
    cfg.noisy_gate_counts = {1, 2};
    cfg.shots = 500;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing, overrides and echo round trip") {
    const std::string path = "test_config.tmp";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "algo = qcpa,grover\n";
        out << "qubits = 2,3\n";
        out << "marked = sweep-all\n";
        out << "p1 = 0.002\n";
        out << "scope = all\n";
        out << "noisy-gates = 1,3\n";
        out << "shots = 123\n";
        out << "seed = 77\n";
        out << "convention = paper\n";
    }
    ExperimentConfig cfg = parse_config_file(path);
    std::remove(path.c_str());

    CHECK(cfg.algorithms.size() == 2);
    CHECK(cfg.qubits == std::vector<int>{2, 3});
    CHECK(cfg.marked == 0);
    CHECK(cfg.p1 == doctest::Approx(0.002));
    CHECK(cfg.scope == NoiseModel::Scope::AllGates);
    CHECK(cfg.shots == 123);
    CHECK(cfg.seed == 77);
    CHECK(cfg.convention == PermutationConvention::PaperRecovery);

    // Flags win over the file.
    apply_config_line(cfg, "shots", "999");
    CHECK(cfg.shots == 999);

    // The echo reproduces every parameter: re-applying it yields the same echo.
    ExperimentConfig replay;
    for (const auto& [k, v] : cfg.echo()) apply_config_line(replay, k, v);
    CHECK(replay.echo() == cfg.echo());

    CHECK_THROWS_AS(apply_config_line(cfg, "bogus", "1"), UsageError);
    CHECK_THROWS_AS(apply_config_line(cfg, "scope", "sometimes"), UsageError);
    CHECK_THROWS_AS(parse_config_file("no_such_file.cfg"), UsageError);
}

TEST_CASE("cmd_search noiseless worked examples") {
    ExperimentConfig cfg;
    cfg.p1 = cfg.p2 = 0.0;
    cfg.shots = 1024;

    // QCPA, 2 qubits, x=(0,1,0,0): every shot on "10".
    cfg.algorithms = {Algorithm::Qcpa};
    cfg.qubits = {2};
    cfg.marked = 2;
    RunReport qcpa = cmd_search(cfg);
    REQUIRE(qcpa.counts.size() == 1);
    CHECK(qcpa.counts[0].shots.counts.at("10") == 1024);
    CHECK(qcpa.counts[0].recovered == 2);

    // QUSA, 3 qubits, marked location 4: every shot on "011".
    cfg.algorithms = {Algorithm::Qusa};
    cfg.qubits = {3};
    cfg.marked = 4;
    RunReport qusa = cmd_search(cfg);
    CHECK(qusa.counts[0].shots.counts.at("011") == 1024);
    CHECK(qusa.counts[0].recovered == 4);

    // Grover, 2 qubits, s=3, one iteration: every shot on "10".
    cfg.algorithms = {Algorithm::Grover};
    cfg.qubits = {2};
    cfg.marked = 3;
    cfg.grover_k = 1;
    RunReport grover = cmd_search(cfg);
    CHECK(grover.counts[0].shots.counts.at("10") == 1024);
    CHECK(grover.counts[0].recovered == 3);

    // Usage validation.
    cfg.algorithms = {Algorithm::Qcpa, Algorithm::Grover};
    CHECK_THROWS_AS(cmd_search(cfg), UsageError);
    cfg.algorithms = {Algorithm::Qcpa};
    cfg.marked = 0;
    CHECK_THROWS_AS(cmd_search(cfg), UsageError);
    cfg.marked = 9;
    CHECK_THROWS_AS(cmd_search(cfg), UsageError);
}

TEST_CASE("sweep determinism across repeats and thread counts") {
    ExperimentConfig cfg = tiny_sweep_config();
    cfg.threads = 1;
    const RunReport a = cmd_sweep_noise(cfg);
    const RunReport b = cmd_sweep_noise(cfg);
    CHECK(emit_report(a, ReportFormat::JsonLines) == emit_report(b, ReportFormat::JsonLines));

    cfg.threads = 2;
    const RunReport c = cmd_sweep_noise(cfg);
    const RunReport d = cmd_sweep_noise(cfg);
    CHECK(emit_report(c, ReportFormat::JsonLines) == emit_report(d, ReportFormat::JsonLines));

    // Identical bytes regardless of the thread count.
    CHECK(emit_report(a, ReportFormat::JsonLines) == emit_report(c, ReportFormat::JsonLines));
    CHECK(emit_report(a, ReportFormat::Csv) == emit_report(c, ReportFormat::Csv));
}

TEST_CASE("sweep with zero error probabilities gives 100 percent everywhere") {
    ExperimentConfig cfg = tiny_sweep_config();
    cfg.p1 = cfg.p2 = 0.0;
    const RunReport report = cmd_sweep_noise(cfg);
    REQUIRE_FALSE(report.cells.empty());
    for (const AccuracyCell& cell : report.cells) {
        CHECK(cell.accuracy == doctest::Approx(100.0));
        CHECK(cell.worst_accuracy == doctest::Approx(100.0));
    }
}

TEST_CASE("empty algorithm list gives an empty table") {
    ExperimentConfig cfg = tiny_sweep_config();
    cfg.algorithms.clear();
    const RunReport sweep = cmd_sweep_noise(cfg);
    CHECK(sweep.cells.empty());
    const RunReport counts = cmd_gate_count(cfg);
    CHECK(counts.census.empty());
}

TEST_CASE("gate count report ordering") {
    ExperimentConfig cfg;
    cfg.qubits = {3, 4, 5};
    const RunReport report = cmd_gate_count(cfg);
    auto total_of = [&](Algorithm a, int q) -> std::size_t {
        for (const CensusRow& row : report.census) {
            if (row.algorithm == a && row.qubits == q) return row.total;
        }
        REQUIRE(false);
        return 0;
    };
    // Grover grows with qubit count and dominates at 4 and 5 qubits.
    CHECK(total_of(Algorithm::Grover, 3) < total_of(Algorithm::Grover, 4));
    CHECK(total_of(Algorithm::Grover, 4) < total_of(Algorithm::Grover, 5));
    for (int q : {4, 5}) {
        CHECK(total_of(Algorithm::Qcpa, q) < total_of(Algorithm::Grover, q));
        CHECK(total_of(Algorithm::Qusa, q) < total_of(Algorithm::Grover, q));
    }
    // Structured counts stay quadratic-scale; generic synthesis is far larger.
    const std::size_t structured = total_of(Algorithm::Qcpa, 5);
    const auto generic = synthesize(build_U(32), SynthesisHint::Generic);
    CHECK(structured < gate_census(generic.circuit).total);
}

TEST_CASE("report emission formats") {
    ExperimentConfig cfg = tiny_sweep_config();
    const RunReport report = cmd_sweep_noise(cfg);

    const std::string csv = emit_report(report, ReportFormat::Csv);
    CHECK(csv.find("algorithm,qubits,noisy_gates,accuracy\n") != std::string::npos);
    CHECK(csv == emit_report(report, ReportFormat::Csv));

    const std::string json = emit_report(report, ReportFormat::JsonLines);
    CHECK(json.find("\"type\":\"config\"") != std::string::npos);
    CHECK(json.find("\"type\":\"accuracy-cell\"") != std::string::npos);

    CHECK_THROWS_AS(parse_format("yaml"), UsageError);
}

TEST_CASE("svg histogram of the noiseless demo has a single full bar on '10'") {
    ExperimentConfig cfg;
    cfg.algorithms = {Algorithm::Qcpa};
    cfg.qubits = {2};
    cfg.marked = 2;
    cfg.p1 = cfg.p2 = 0.0;
    cfg.shots = 1000;
    const RunReport report = cmd_search(cfg);
    const std::string svg = emit_report(report, ReportFormat::SvgHistogram);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find(">10</text>") != std::string::npos);
    // Exactly one bar of nonzero height (height="220"), the rest are zero.
    std::size_t full = 0;
    std::size_t pos = 0;
    while ((pos = svg.find("height=\"220\" fill", pos)) != std::string::npos) {
        ++full;
        pos += 10;
    }
    CHECK(full == 1);
    CHECK(svg.find("height=\"0\" fill") != std::string::npos);

    const std::string text = emit_report(report, ReportFormat::TextHistogram);
    CHECK(text.find("10 | ##") != std::string::npos);
}

TEST_CASE("accuracy cells are non-increasing in noisy-gate count (2pp slack)") {
    ExperimentConfig cfg;
    cfg.algorithms = {Algorithm::Qcpa, Algorithm::Qusa, Algorithm::Grover};
    cfg.qubits = {3};
    cfg.noisy_gate_counts = {2, 4, 6};
    cfg.shots = 4000;
    const RunReport report = cmd_sweep_noise(cfg);
    for (Algorithm algo : cfg.algorithms) {
        double prev = 200.0;
        for (int ng : cfg.noisy_gate_counts) {
            for (const AccuracyCell& cell : report.cells) {
                if (cell.algorithm == algo && cell.noisy_gates == ng) {
                    CHECK(cell.accuracy <= prev + 2.0);
                    prev = cell.accuracy;
                }
            }
        }
    }
}
