#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qsearch/experiment.hpp"
#include "qsearch/synthesis.hpp"

namespace {

using qsearch::ExperimentConfig;
using qsearch::ReportFormat;
using qsearch::RunReport;
using qsearch::UsageError;

struct CommonFlags {
    std::string config_path;
    std::string algo;
    std::string qubits;
    std::string marked;
    double p1 = -1.0;
    double p2 = -1.0;
    std::string scope;
    std::string noisy_gates;
    long long shots = -1;
    long long seed = -1;
    std::string convention;
    std::string format;
    std::string out;
    std::string mode;
    int threads = -1;
    int grover_k = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (flat key = value; flags win)");
    cmd->add_option("--algo", f.algo, "comma list of qcpa,qusa,grover");
    cmd->add_option("--qubits", f.qubits, "comma list of qubit counts");
    cmd->add_option("--marked", f.marked, "marked position (1-based) or sweep-all");
    cmd->add_option("--p1", f.p1, "1-qubit depolarizing probability");
    cmd->add_option("--p2", f.p2, "CX depolarizing probability");
    cmd->add_option("--scope", f.scope, "noise scope: first-n or all");
    cmd->add_option("--noisy-gates", f.noisy_gates, "comma list of noisy-gate counts");
    cmd->add_option("--shots", f.shots, "measurement shots");
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--convention", f.convention, "row-start or paper");
    cmd->add_option("--format", f.format, "json-lines, csv, text-histogram or svg-histogram");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--mode", f.mode, "circuit or matrix");
    cmd->add_option("--threads", f.threads, "worker threads for sweep cells");
    cmd->add_option("--grover-k", f.grover_k, "Grover iteration override (0 = auto)");
}

ExperimentConfig build_config(const CommonFlags& f) {
    ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = qsearch::parse_config_file(f.config_path);
    if (!f.algo.empty()) qsearch::apply_config_line(cfg, "algo", f.algo);
    if (!f.qubits.empty()) qsearch::apply_config_line(cfg, "qubits", f.qubits);
    if (!f.marked.empty()) qsearch::apply_config_line(cfg, "marked", f.marked);
    if (f.p1 >= 0.0) qsearch::apply_config_line(cfg, "p1", std::to_string(f.p1));
    if (f.p2 >= 0.0) qsearch::apply_config_line(cfg, "p2", std::to_string(f.p2));
    if (!f.scope.empty()) qsearch::apply_config_line(cfg, "scope", f.scope);
    if (!f.noisy_gates.empty()) qsearch::apply_config_line(cfg, "noisy-gates", f.noisy_gates);
    if (f.shots >= 0) qsearch::apply_config_line(cfg, "shots", std::to_string(f.shots));
    if (f.seed >= 0) qsearch::apply_config_line(cfg, "seed", std::to_string(f.seed));
    if (!f.convention.empty()) qsearch::apply_config_line(cfg, "convention", f.convention);
    if (!f.format.empty()) cfg.format = f.format;
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.mode.empty()) qsearch::apply_config_line(cfg, "mode", f.mode);
    if (f.threads >= 0) qsearch::apply_config_line(cfg, "threads", std::to_string(f.threads));
    if (f.grover_k >= 0) qsearch::apply_config_line(cfg, "grover-k", std::to_string(f.grover_k));
    return cfg;
}

void write_output(const std::string& payload, const std::string& out) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + out + "'");
    file << payload;
}

int emit(const RunReport& report, const ExperimentConfig& cfg, const std::string& fallback) {
    const std::string name = cfg.format.empty() ? fallback : cfg.format;
    write_output(qsearch::emit_report(report, qsearch::parse_format(name)), cfg.out);
    return 0;
}

int run_synth(const std::string& in_path, const std::string& out_path, const std::string& hint) {
    qsearch::SynthesisHint h = qsearch::SynthesisHint::Generic;
    if (hint == "qft") {
        h = qsearch::SynthesisHint::QftFamily;
    } else if (hint == "permutation") {
        h = qsearch::SynthesisHint::Permutation;
    } else if (hint != "generic") {
        throw UsageError("hint must be generic, qft or permutation");
    }

    qsearch::CMatrix m;
    if (in_path.empty() || in_path == "-") {
        m = qsearch::read_cmatrix(std::cin);
    } else {
        std::ifstream in(in_path);
        if (!in) throw UsageError("cannot open matrix file '" + in_path + "'");
        try {
            m = qsearch::read_cmatrix(in);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad matrix file: ") + e.what());
        }
    }

    qsearch::SynthesisResult result;
    try {
        result = qsearch::synthesize(m, h);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("cannot synthesize input: ") + e.what());
    }
    std::ostringstream os;
    qsearch::write_circuit(os, result.circuit);
    write_output(os.str(), out_path);
    if (result.fallback) {
        std::cerr << "warning: hint did not match, used " << result.path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum search laboratory: smooth-operator search algorithms vs Grover"};
    app.require_subcommand(1);

    CommonFlags search_flags;
    CommonFlags sweep_flags;
    CommonFlags count_flags;
    CLI::App* search = app.add_subcommand("search", "one algorithm at one (N, s); histogram");
    CLI::App* sweep = app.add_subcommand("sweep-noise", "accuracy table over noise settings");
    CLI::App* count = app.add_subcommand("gate-count", "gate census per algorithm and size");
    add_common_flags(search, search_flags);
    add_common_flags(sweep, sweep_flags);
    add_common_flags(count, count_flags);

    std::string synth_in;
    std::string synth_out;
    std::string synth_hint = "generic";
    CLI::App* synth = app.add_subcommand("synth", "matrix file -> circuit file");
    synth->add_option("input", synth_in, "matrix file in cmatrix format ('-' for stdin)");
    synth->add_option("--out", synth_out, "circuit file (default stdout)");
    synth->add_option("--hint", synth_hint, "generic, qft or permutation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (search->parsed()) {
            const ExperimentConfig cfg = build_config(search_flags);
            return emit(qsearch::cmd_search(cfg), cfg, "text-histogram");
        }
        if (sweep->parsed()) {
            const ExperimentConfig cfg = build_config(sweep_flags);
            return emit(qsearch::cmd_sweep_noise(cfg), cfg, "csv");
        }
        if (count->parsed()) {
            const ExperimentConfig cfg = build_config(count_flags);
            return emit(qsearch::cmd_gate_count(cfg), cfg, "csv");
        }
        if (synth->parsed()) {
            return run_synth(synth_in, synth_out, synth_hint);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
