#include "qsearch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace qsearch {

namespace {

constexpr const char* kVersion = "qsearch 0.1.0";

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("expected an integer for " + what + ", got '" + s + "'");
    }
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("expected a number for " + what + ", got '" + s + "'");
    }
}

std::string scope_name(NoiseModel::Scope scope) {
    return scope == NoiseModel::Scope::FirstN ? "first-n" : "all";
}

std::string convention_name(PermutationConvention conv) {
    return conv == PermutationConvention::RowStart ? "row-start" : "paper";
}

int effective_grover_k(const ExperimentConfig& cfg, std::size_t n) {
    return cfg.grover_k > 0 ? cfg.grover_k : grover_iterations(n);
}

struct DistTask {
    Algorithm algo;
    int qubits;
    int s;
    int noisy_gates;  // -1 means all-gates scope
};

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Qcpa: return "qcpa";
        case Algorithm::Qusa: return "qusa";
        default: return "grover";
    }
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "qcpa") return Algorithm::Qcpa;
    if (name == "qusa") return Algorithm::Qusa;
    if (name == "grover") return Algorithm::Grover;
    throw UsageError("unknown algorithm '" + name + "' (expected qcpa, qusa or grover)");
}

ReportFormat parse_format(const std::string& name) {
    if (name == "json-lines") return ReportFormat::JsonLines;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text-histogram") return ReportFormat::TextHistogram;
    if (name == "svg-histogram") return ReportFormat::SvgHistogram;
    throw UsageError("unknown format '" + name +
                     "' (expected json-lines, csv, text-histogram or svg-histogram)");
}

void ExperimentConfig::validate() const {
    if (algorithms.empty() && qubits.empty()) return;  // empty table is allowed
    for (int q : qubits) {
        if (q < 1 || q > 8) throw UsageError("qubits must lie in 1..8");
    }
    if (shots < 1) throw UsageError("shots must be >= 1");
    if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0) {
        throw UsageError("error probabilities must lie in [0,1]");
    }
    for (int n : noisy_gate_counts) {
        if (n < 0) throw UsageError("noisy-gates entries must be >= 0");
    }
    if (marked < 0) throw UsageError("marked must be a positive position or sweep-all");
    if (threads < 0) throw UsageError("threads must be >= 0");
    if (grover_k < 0) throw UsageError("grover iteration override must be >= 0");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    std::string algos;
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        if (i) algos += ",";
        algos += algorithm_name(algorithms[i]);
    }
    kv.emplace_back("algo", algos);
    kv.emplace_back("qubits", join_ints(qubits));
    kv.emplace_back("marked", marked == 0 ? "sweep-all" : std::to_string(marked));
    char prob[32];
    std::snprintf(prob, sizeof(prob), "%.17g", p1);
    kv.emplace_back("p1", prob);
    std::snprintf(prob, sizeof(prob), "%.17g", p2);
    kv.emplace_back("p2", prob);
    kv.emplace_back("scope", scope_name(scope));
    kv.emplace_back("noisy-gates", join_ints(noisy_gate_counts));
    kv.emplace_back("shots", std::to_string(shots));
    kv.emplace_back("seed", std::to_string(seed));
    kv.emplace_back("convention", convention_name(convention));
    kv.emplace_back("mode", mode == RunMode::Circuit ? "circuit" : "matrix");
    kv.emplace_back("grover-k", std::to_string(grover_k));
    // threads is runtime parallelism, not an experiment parameter; reports
    // must not depend on it.
    return kv;
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "algo") {
        cfg.algorithms.clear();
        for (const std::string& name : split_csv(value)) {
            cfg.algorithms.push_back(parse_algorithm(name));
        }
    } else if (key == "qubits") {
        cfg.qubits.clear();
        for (const std::string& q : split_csv(value)) cfg.qubits.push_back(parse_int(q, "qubits"));
    } else if (key == "marked") {
        cfg.marked = value == "sweep-all" ? 0 : parse_int(value, "marked");
    } else if (key == "p1") {
        cfg.p1 = parse_double(value, "p1");
    } else if (key == "p2") {
        cfg.p2 = parse_double(value, "p2");
    } else if (key == "scope") {
        if (value == "first-n") {
            cfg.scope = NoiseModel::Scope::FirstN;
        } else if (value == "all") {
            cfg.scope = NoiseModel::Scope::AllGates;
        } else {
            throw UsageError("scope must be first-n or all");
        }
    } else if (key == "noisy-gates") {
        cfg.noisy_gate_counts.clear();
        for (const std::string& n : split_csv(value)) {
            cfg.noisy_gate_counts.push_back(parse_int(n, "noisy-gates"));
        }
    } else if (key == "shots") {
        cfg.shots = parse_int(value, "shots");
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "convention") {
        if (value == "row-start") {
            cfg.convention = PermutationConvention::RowStart;
        } else if (value == "paper") {
            cfg.convention = PermutationConvention::PaperRecovery;
        } else {
            throw UsageError("convention must be row-start or paper");
        }
    } else if (key == "mode") {
        if (value == "circuit") {
            cfg.mode = RunMode::Circuit;
        } else if (value == "matrix") {
            cfg.mode = RunMode::Matrix;
        } else {
            throw UsageError("mode must be circuit or matrix");
        }
    } else if (key == "grover-k") {
        cfg.grover_k = parse_int(value, "grover-k");
    } else if (key == "threads") {
        cfg.threads = parse_int(value, "threads");
    } else if (key == "format") {
        cfg.format = value;
    } else if (key == "out") {
        cfg.out = value;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char ch : line) {
                if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
            }
            if (blank) continue;
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

Circuit algorithm_circuit(Algorithm algo, int n_qubits, int s, const ExperimentConfig& cfg) {
    const std::size_t n = std::size_t{1} << n_qubits;
    switch (algo) {
        case Algorithm::Qcpa:
            return qcpa_circuit(MarkedSequence::single_marked(n, s), cfg.convention);
        case Algorithm::Qusa:
            return qusa_circuit(MarkedSequence::single_marked(n, s));
        default:
            return grover_circuit(n_qubits, s, effective_grover_k(cfg, n));
    }
}

int recover_from_bitstring(Algorithm algo, const std::string& bits, int n,
                           PermutationConvention conv) {
    int index = 0;
    for (char ch : bits) index = index * 2 + (ch == '1' ? 1 : 0);
    const int j = index + 1;
    return algo == Algorithm::Qcpa ? recover_qcpa(j, n, conv) : j;
}

RunReport cmd_search(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.algorithms.size() != 1 || cfg.qubits.size() != 1) {
        throw UsageError("search runs a single algorithm at a single qubit count");
    }
    const Algorithm algo = cfg.algorithms[0];
    const int n_qubits = cfg.qubits[0];
    const int n = 1 << n_qubits;
    if (cfg.marked == 0) throw UsageError("search needs a single marked position (--marked)");
    const int s = cfg.marked;
    if (s > n) throw UsageError("marked position exceeds N = 2^qubits");

    RunReport report;
    report.config_echo = cfg.echo();
    report.seed = cfg.seed;
    report.version = kVersion;

    ShotResult shots;
    if (cfg.mode == RunMode::Circuit) {
        const Circuit circuit = algorithm_circuit(algo, n_qubits, s, cfg);
        NoiseModel nm;
        nm.p1 = cfg.p1;
        nm.p2 = cfg.p2;
        nm.scope = cfg.scope;
        nm.first_n = cfg.noisy_gate_counts.empty() ? 0 : cfg.noisy_gate_counts.front();
        shots = run_noisy(circuit, nm, cfg.shots, derive_seed(cfg.seed, {0, 0, 0}));

        CensusRow row;
        row.algorithm = algo;
        row.qubits = n_qubits;
        const GateCensus census = gate_census(circuit);
        row.single = census.single;
        row.cx = census.cx;
        row.total = census.total;
        report.census.push_back(row);
    } else {
        SearchOutcome outcome;
        if (algo == Algorithm::Qcpa) {
            outcome = run_qcpa(MarkedSequence::single_marked(n, s), cfg.convention, RunMode::Matrix);
        } else if (algo == Algorithm::Qusa) {
            outcome = run_qusa(MarkedSequence::single_marked(n, s), RunMode::Matrix);
        } else {
            outcome = run_grover(n, s, effective_grover_k(cfg, n), RunMode::Matrix);
        }
        shots = sample_counts(outcome.distribution, n_qubits, cfg.shots,
                              derive_seed(cfg.seed, {0, 0, 0}));
    }

    std::string best_bits;
    std::int64_t best_count = -1;
    for (const auto& [bits, count] : shots.counts) {
        if (count > best_count) {
            best_count = count;
            best_bits = bits;
        }
    }

    CountsBlock block;
    block.algorithm = algo;
    block.qubits = n_qubits;
    block.marked = s;
    block.recovered = recover_from_bitstring(algo, best_bits, n, cfg.convention);
    block.shots = std::move(shots);
    report.counts.push_back(std::move(block));
    return report;
}

RunReport cmd_sweep_noise(const ExperimentConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config_echo = cfg.echo();
    report.seed = cfg.seed;
    report.version = kVersion;
    if (cfg.algorithms.empty() || cfg.qubits.empty() || cfg.noisy_gate_counts.empty()) {
        return report;
    }

    // Distinct density evolutions; under all-gates the noisy-gate column does
    // not change the distribution, so those tasks collapse to one per (algo,
    // qubits, s).
    std::vector<DistTask> tasks;
    for (Algorithm algo : cfg.algorithms) {
        for (int q : cfg.qubits) {
            const int n = 1 << q;
            const int s_lo = cfg.marked == 0 ? 1 : cfg.marked;
            const int s_hi = cfg.marked == 0 ? n : cfg.marked;
            if (s_hi > n) throw UsageError("marked position exceeds N = 2^qubits");
            for (int s = s_lo; s <= s_hi; ++s) {
                if (cfg.scope == NoiseModel::Scope::AllGates) {
                    tasks.push_back({algo, q, s, -1});
                } else {
                    for (int ng : cfg.noisy_gate_counts) tasks.push_back({algo, q, s, ng});
                }
            }
        }
    }

    std::vector<std::vector<double>> distributions(tasks.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                               : std::max(1u, hw == 0 ? 1u : hw);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const DistTask& t = tasks[i];
            const Circuit circuit = algorithm_circuit(t.algo, t.qubits, t.s, cfg);
            NoiseModel nm;
            nm.p1 = cfg.p1;
            nm.p2 = cfg.p2;
            if (t.noisy_gates < 0) {
                nm.scope = NoiseModel::Scope::AllGates;
            } else {
                nm.scope = NoiseModel::Scope::FirstN;
                nm.first_n = t.noisy_gates;
            }
            distributions[i] = noisy_distribution(circuit, nm);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::map<std::tuple<int, int, int, int>, std::size_t> task_index;  // algo,q,s,ng -> slot
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        task_index[{static_cast<int>(tasks[i].algo), tasks[i].qubits, tasks[i].s,
                    tasks[i].noisy_gates}] = i;
    }

    for (Algorithm algo : cfg.algorithms) {
        for (int q : cfg.qubits) {
            const int n = 1 << q;
            const int s_lo = cfg.marked == 0 ? 1 : cfg.marked;
            const int s_hi = cfg.marked == 0 ? n : cfg.marked;
            for (int ng : cfg.noisy_gate_counts) {
                AccuracyCell cell;
                cell.algorithm = algo;
                cell.qubits = q;
                cell.noisy_gates = ng;
                cell.scope = scope_name(cfg.scope);
                double total = 0.0;
                double worst = 101.0;
                int worst_s = 0;
                for (int s = s_lo; s <= s_hi; ++s) {
                    const int slot_ng =
                        cfg.scope == NoiseModel::Scope::AllGates ? -1 : ng;
                    const auto& dist =
                        distributions[task_index.at({static_cast<int>(algo), q, s, slot_ng})];
                    const ShotResult result = sample_counts(
                        dist, q, cfg.shots,
                        derive_seed(cfg.seed, {static_cast<std::uint64_t>(algo),
                                               static_cast<std::uint64_t>(q),
                                               static_cast<std::uint64_t>(ng + 1),
                                               static_cast<std::uint64_t>(
                                                   cfg.scope == NoiseModel::Scope::AllGates),
                                               static_cast<std::uint64_t>(s)}));
                    std::int64_t hits = 0;
                    for (const auto& [bits, count] : result.counts) {
                        if (recover_from_bitstring(algo, bits, n, cfg.convention) == s) {
                            hits += count;
                        }
                    }
                    const double acc = 100.0 * static_cast<double>(hits) /
                                       static_cast<double>(cfg.shots);
                    total += acc;
                    if (acc < worst) {
                        worst = acc;
                        worst_s = s;
                    }
                }
                const int count_s = s_hi - s_lo + 1;
                cell.accuracy = total / count_s;
                cell.worst_s = worst_s;
                cell.worst_accuracy = worst;
                report.cells.push_back(cell);
            }
        }
    }

    // Publish the gate decompositions the table was measured on, so the
    // numbers are re-derivable from the report alone.
    for (Algorithm algo : cfg.algorithms) {
        for (int q : cfg.qubits) {
            const int n = 1 << q;
            const int s = cfg.marked == 0 ? std::max(1, n / 2) : cfg.marked;
            const GateCensus census = gate_census(algorithm_circuit(algo, q, s, cfg));
            report.census.push_back({algo, q, census.single, census.cx, census.total});
        }
    }
    return report;
}

RunReport cmd_gate_count(const ExperimentConfig& cfg) {
    cfg.validate();
    RunReport report;
    report.config_echo = cfg.echo();
    report.seed = cfg.seed;
    report.version = kVersion;
    for (Algorithm algo : cfg.algorithms) {
        for (int q : cfg.qubits) {
            const int n = 1 << q;
            const int s = cfg.marked == 0 ? std::max(1, n / 2) : cfg.marked;
            if (s > n) throw UsageError("marked position exceeds N = 2^qubits");
            const Circuit circuit = algorithm_circuit(algo, q, s, cfg);
            const GateCensus census = gate_census(circuit);
            CensusRow row;
            row.algorithm = algo;
            row.qubits = q;
            row.single = census.single;
            row.cx = census.cx;
            row.total = census.total;
            report.census.push_back(row);
        }
    }
    return report;
}

namespace {

std::string emit_json_lines(const RunReport& report) {
    std::ostringstream os;
    nlohmann::ordered_json config;
    config["type"] = "config";
    for (const auto& [k, v] : report.config_echo) config[k] = v;
    os << config.dump() << "\n";

    for (const AccuracyCell& cell : report.cells) {
        nlohmann::ordered_json j;
        j["type"] = "accuracy-cell";
        j["algorithm"] = algorithm_name(cell.algorithm);
        j["qubits"] = cell.qubits;
        j["noisy_gates"] = cell.noisy_gates;
        j["scope"] = cell.scope;
        j["accuracy"] = fixed2(cell.accuracy);
        j["worst_s"] = cell.worst_s;
        j["worst_accuracy"] = fixed2(cell.worst_accuracy);
        os << j.dump() << "\n";
    }
    for (const CountsBlock& block : report.counts) {
        nlohmann::ordered_json j;
        j["type"] = "counts";
        j["algorithm"] = algorithm_name(block.algorithm);
        j["qubits"] = block.qubits;
        j["marked"] = block.marked;
        j["recovered"] = block.recovered;
        j["shots"] = block.shots.shots;
        nlohmann::ordered_json c;
        for (const auto& [bits, count] : block.shots.counts) c[bits] = count;
        j["histogram"] = c;
        os << j.dump() << "\n";
    }
    for (const CensusRow& row : report.census) {
        nlohmann::ordered_json j;
        j["type"] = "gate-census";
        j["algorithm"] = algorithm_name(row.algorithm);
        j["qubits"] = row.qubits;
        j["single"] = row.single;
        j["cx"] = row.cx;
        j["total"] = row.total;
        os << j.dump() << "\n";
    }
    nlohmann::ordered_json tail;
    tail["type"] = "summary";
    tail["version"] = report.version;
    tail["seed"] = report.seed;
    os << tail.dump() << "\n";
    return os.str();
}

std::string emit_csv(const RunReport& report) {
    std::ostringstream os;
    os << "# version = " << report.version << "\n";
    for (const auto& [k, v] : report.config_echo) os << "# " << k << " = " << v << "\n";
    if (!report.cells.empty()) {
        os << "algorithm,qubits,noisy_gates,accuracy\n";
        for (const AccuracyCell& cell : report.cells) {
            os << algorithm_name(cell.algorithm) << "," << cell.qubits << "," << cell.noisy_gates
               << "," << fixed2(cell.accuracy) << "\n";
        }
    }
    if (!report.census.empty()) {
        os << "algorithm,qubits,single,cx,total\n";
        for (const CensusRow& row : report.census) {
            os << algorithm_name(row.algorithm) << "," << row.qubits << "," << row.single << ","
               << row.cx << "," << row.total << "\n";
        }
    }
    if (!report.counts.empty()) {
        os << "algorithm,qubits,marked,recovered,bitstring,count\n";
        for (const CountsBlock& block : report.counts) {
            for (const auto& [bits, count] : block.shots.counts) {
                os << algorithm_name(block.algorithm) << "," << block.qubits << "," << block.marked
                   << "," << block.recovered << "," << bits << "," << count << "\n";
            }
        }
    }
    return os.str();
}

std::string emit_text_histogram(const RunReport& report) {
    std::ostringstream os;
    os << report.version << "\n";
    for (const auto& [k, v] : report.config_echo) os << k << " = " << v << "\n";
    for (const CountsBlock& block : report.counts) {
        os << "\n" << algorithm_name(block.algorithm) << " " << block.qubits
           << " qubits, marked " << block.marked << ", recovered " << block.recovered << "\n";
        std::int64_t peak = 1;
        for (const auto& [bits, count] : block.shots.counts) peak = std::max(peak, count);
        for (const auto& [bits, count] : block.shots.counts) {
            const int width = static_cast<int>(50.0 * static_cast<double>(count) /
                                               static_cast<double>(peak));
            os << bits << " | " << std::string(width, '#') << " " << count << "\n";
        }
    }
    for (const AccuracyCell& cell : report.cells) {
        os << algorithm_name(cell.algorithm) << " qubits=" << cell.qubits
           << " noisy_gates=" << cell.noisy_gates << " scope=" << cell.scope
           << " accuracy=" << fixed2(cell.accuracy) << "% worst_s=" << cell.worst_s << " ("
           << fixed2(cell.worst_accuracy) << "%)\n";
    }
    for (const CensusRow& row : report.census) {
        os << algorithm_name(row.algorithm) << " qubits=" << row.qubits
           << " single=" << row.single << " cx=" << row.cx << " total=" << row.total << "\n";
    }
    return os.str();
}

std::string emit_svg_histogram(const RunReport& report) {
    std::ostringstream os;
    const int bar_width = 36;
    const int plot_height = 220;
    std::size_t bars = 0;
    for (const CountsBlock& block : report.counts) bars += block.shots.counts.size();
    const int width = std::max<std::size_t>(bars, 1) * (bar_width + 12) + 40;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << plot_height + 60 << "\">\n";
    os << "<!--\n";
    os << "version = " << report.version << "\n";
    for (const auto& [k, v] : report.config_echo) os << k << " = " << v << "\n";
    os << "-->\n";
    int x = 20;
    for (const CountsBlock& block : report.counts) {
        std::int64_t peak = 1;
        for (const auto& [bits, count] : block.shots.counts) peak = std::max(peak, count);
        for (const auto& [bits, count] : block.shots.counts) {
            const int h = static_cast<int>(plot_height * static_cast<double>(count) /
                                           static_cast<double>(peak));
            os << "<rect x=\"" << x << "\" y=\"" << (20 + plot_height - h) << "\" width=\""
               << bar_width << "\" height=\"" << h << "\" fill=\"#4477aa\"/>\n";
            os << "<text x=\"" << (x + bar_width / 2) << "\" y=\"" << (plot_height + 40)
               << "\" text-anchor=\"middle\" font-size=\"12\">" << bits << "</text>\n";
            os << "<text x=\"" << (x + bar_width / 2) << "\" y=\""
               << (15 + plot_height - h) << "\" text-anchor=\"middle\" font-size=\"10\">" << count
               << "</text>\n";
            x += bar_width + 12;
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::JsonLines: return emit_json_lines(report);
        case ReportFormat::Csv: return emit_csv(report);
        case ReportFormat::TextHistogram: return emit_text_histogram(report);
        case ReportFormat::SvgHistogram: return emit_svg_histogram(report);
    }
    throw UsageError("unknown report format");
}

}  // namespace qsearch
