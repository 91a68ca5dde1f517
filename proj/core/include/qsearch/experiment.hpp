#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsearch/search_algorithms.hpp"
#include "qsearch/simulate.hpp"

namespace qsearch {

/// Bad flags, config values, or report formats; the CLI maps this to exit 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum class Algorithm { Qcpa, Qusa, Grover };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

enum class ReportFormat { JsonLines, Csv, TextHistogram, SvgHistogram };

ReportFormat parse_format(const std::string& name);

struct ExperimentConfig {
    std::vector<Algorithm> algorithms{Algorithm::Qcpa, Algorithm::Qusa, Algorithm::Grover};
    std::vector<int> qubits{3, 4, 5};
    int marked = 0;  // 0 = sweep-all
    double p1 = 0.001;
    double p2 = 0.001;
    NoiseModel::Scope scope = NoiseModel::Scope::FirstN;
    std::vector<int> noisy_gate_counts{2, 4, 6};
    std::int64_t shots = 10000;
    std::uint64_t seed = 1;
    PermutationConvention convention = PermutationConvention::RowStart;
    RunMode mode = RunMode::Circuit;
    int grover_k = 0;  // 0 = floor((pi/4) sqrt(N))
    int threads = 0;   // 0 = hardware concurrency
    std::string format;  // empty = per-command default
    std::string out;     // empty = stdout

    void validate() const;
    /// Every parameter as ordered key/value pairs (the report's config echo).
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Flat "key = value" config file; '#' starts a comment. Unknown keys are
/// usage errors. Returns the parsed keys so flags can override them.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct AccuracyCell {
    Algorithm algorithm;
    int qubits = 0;
    int noisy_gates = 0;
    std::string scope;
    double accuracy = 0.0;         // percent, averaged over marked positions
    int worst_s = 0;
    double worst_accuracy = 0.0;   // percent, worst marked position
};

struct CountsBlock {
    Algorithm algorithm;
    int qubits = 0;
    int marked = 0;
    int recovered = 0;
    ShotResult shots;
};

struct CensusRow {
    Algorithm algorithm;
    int qubits = 0;
    std::size_t single = 0;
    std::size_t cx = 0;
    std::size_t total = 0;
};

struct RunReport {
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<AccuracyCell> cells;
    std::vector<CountsBlock> counts;
    std::vector<CensusRow> census;
    std::uint64_t seed = 0;
    std::string version;
};

/// One pipeline at one (N, s): counts histogram plus the recovered position.
RunReport cmd_search(const ExperimentConfig& cfg);

/// Accuracy table over algorithms x qubits x noisy-gate counts. Cells run
/// concurrently; each derives its own RNG stream from (seed, cell coords), so
/// the report does not depend on scheduling.
RunReport cmd_sweep_noise(const ExperimentConfig& cfg);

/// Gate census per algorithm and qubit count under structured synthesis.
RunReport cmd_gate_count(const ExperimentConfig& cfg);

std::string emit_report(const RunReport& report, ReportFormat format);

/// Circuit for one algorithm at (n_qubits, s) under the config's settings.
Circuit algorithm_circuit(Algorithm algo, int n_qubits, int s, const ExperimentConfig& cfg);

/// Marked position recovered from a measured bitstring.
int recover_from_bitstring(Algorithm algo, const std::string& bits, int n,
                           PermutationConvention conv);

}  // namespace qsearch
