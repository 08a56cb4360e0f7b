#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "exft/checks.h"
#include "exft/harness.h"
#include "exft/hybrid.h"
#include "exft/lcu.h"
#include "exft/synthesis.h"

using json = nlohmann::ordered_json;
using namespace exft;

namespace {

struct Output {
    std::string path;
    bool json = false;
};

std::string g_config_help;

void add_common(CLI::App* sub, Output& out) {
    sub->add_option("--config", g_config_help, "key = value file supplying any flag; flags given on the command line win");
    sub->add_option("--out", out.path, "Write to this path instead of stdout");
    sub->add_flag("--json", out.json, "Emit JSON instead of CSV");
}

void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out.path);
    f << text;
}

std::string join(const std::vector<int>& v, char sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Lines "key = value"; '#' starts a comment.  Keys are flag names without the dashes;
// boolean flags take true/false.
std::vector<std::string> config_args(const std::string& path, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error(fmt::format("{}:{}: expected key = value", path, lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        const CLI::Option* opt = nullptr;
        try {
            opt = sub.get_option(flag);
        } catch (const CLI::OptionNotFound&) {
            throw std::runtime_error(fmt::format("{}:{}: unknown key '{}' for {}", path, lineno, key, sub.get_name()));
        }
        if (key == "config") throw std::runtime_error(fmt::format("{}:{}: nested config files are not supported", path, lineno));
        if (opt->get_expected_max() == 0) {
            if (value == "true" || value == "1" || value == "on" || value == "yes") {
                args.push_back(flag);
            } else if (!(value == "false" || value == "0" || value == "off" || value == "no")) {
                throw std::runtime_error(fmt::format("{}:{}: '{}' is a boolean flag", path, lineno, key));
            }
            continue;
        }
        args.push_back(flag);
        args.push_back(value);
    }
    return args;
}

std::vector<int> parse_ints(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("bad number: " + item);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    Output out;
    CheckOptions opts;
};

int run_verify(const VerifyArgs& a) {
    const auto results = run_all_checks(a.opts);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    if (a.out.json) {
        json j = json::array();
        for (const auto& r : results) j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        emit(a.out, j.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& r : results) text += format_check(r) + "\n";
        text += fmt::format("{} of {} checks failed\n", failed, results.size());
        emit(a.out, text);
    }
    return failed == 0 ? 0 : 1;
}

// --- synth --------------------------------------------------------------------

struct SynthArgs {
    Output out;
    std::string model = "xy";
    std::string gate = "cnot";
    bool ideal_z = false;
};

int run_synth(const SynthArgs& a) {
    const ModelKind model = parse_model(a.model);
    SynthOptions opts;
    opts.ideal_z = a.ideal_z;
    PulseSequence seq;
    int n = 4;
    if (a.gate == "lcu") {
        seq = synth_lcu(lcu_device(model), opts);
    } else {
        const Device device = Device::uniform(model, 4);
        const BlockLayout layout(2);
        if (a.gate == "cnot") {
            seq = synth_encoded_cnot(layout.block(1), layout.block(2), device, opts);
        } else if (a.gate == "cp") {
            seq = synth_encoded_cp(layout.block(1), layout.block(2), device, opts);
        } else if (a.gate == "hadamard") {
            seq = synth_encoded_hadamard(layout.block(1), Device::uniform(model, 3), opts);
            n = 3;
        } else {
            throw std::invalid_argument("unknown gate " + a.gate);
        }
    }
    if (!a.out.json) {
        emit(a.out, to_text(seq, n));
        return 0;
    }
    json pulses = json::array();
    for (const auto& p : seq.pulses()) {
        if (const auto* ex = std::get_if<ExchangePulse>(&p)) {
            pulses.push_back({{"kind", "EX"}, {"i", ex->i}, {"j", ex->j}, {"t", ex->t}});
        } else if (const auto* gf = std::get_if<FieldPulse>(&p)) {
            pulses.push_back({{"kind", "GF"}, {"t", gf->t}});
        } else {
            const auto& z = std::get<IdealZPulse>(p);
            pulses.push_back({{"kind", "ZR"}, {"q", z.q}, {"angle", z.angle}});
        }
    }
    json segments = json::array();
    for (const auto& s : seq.segments()) segments.push_back({{"name", s.name}, {"begin", s.begin}, {"end", s.end}});
    json j{{"model", seq.model()}, {"gate", seq.gate()}, {"qubits", n},      {"pulse_count", seq.pulse_count()},
           {"segments", segments}, {"notes", seq.notes()}, {"pulses", pulses}};
    emit(a.out, j.dump(2) + "\n");
    return 0;
}

// --- lcu-sim ------------------------------------------------------------------

struct LcuSimArgs {
    Output out;
    std::string model = "xy";
    std::string rates = "0,1e-3,1e-2";
    LcuSimConfig config;
};

int run_lcu_sim_cmd(const LcuSimArgs& a) {
    LcuSimConfig config = a.config;
    config.model = parse_model(a.model);
    std::vector<LcuSimRow> rows;
    for (double p : parse_doubles(a.rates)) {
        config.p = p;
        rows.push_back(run_lcu_sim(config));
    }
    if (a.out.json) {
        json j = json::array();
        for (const auto& r : rows) {
            j.push_back({{"p_injected", r.p_injected},
                         {"omega_empirical", r.omega},
                         {"p_c_empirical", r.p_c},
                         {"n_used", r.n_used ? json(*r.n_used) : json(nullptr)},
                         {"success_rate", r.success_rate},
                         {"trials", r.trials}});
        }
        emit(a.out, j.dump(2) + "\n");
        return 0;
    }
    std::string text = "p_injected,omega_empirical,p_c_empirical,n_used,success_rate\n";
    for (const auto& r : rows) {
        text += fmt::format("{:.6g},{:.6f},{:.6f},{},{:.6f}\n", r.p_injected, r.omega, r.p_c,
                            r.n_used ? std::to_string(*r.n_used) : "", r.success_rate);
    }
    emit(a.out, text);
    return 0;
}

// --- propagate ----------------------------------------------------------------

struct PropagateArgs {
    Output out;
    std::string model = "xy";
    std::string gate = "cnot";
    bool sweep = false;
    int insertion = 0;
    std::string qubits = "1,2,3,4";
    std::string letters = "XY";
};

int run_propagate(const PropagateArgs& a) {
    const ModelKind model = parse_model(a.model);
    const Device device = Device::uniform(model, 4);
    const BlockLayout layout(2);
    PulseSequence seq;
    if (a.gate == "cnot") {
        seq = synth_encoded_cnot(layout.block(1), layout.block(2), device);
    } else if (a.gate == "cp") {
        seq = synth_encoded_cp(layout.block(1), layout.block(2), device);
    } else {
        throw std::invalid_argument("propagate supports --gate cnot or cp");
    }
    std::vector<PropagationResult> rows;
    for (int q : parse_ints(a.qubits)) {
        for (char letter : a.letters) {
            if (a.sweep) {
                for (auto& r : sweep_insertions(seq, device, layout, q, letter)) rows.push_back(std::move(r));
            } else {
                rows.push_back(propagate_fault(seq, device, layout, q, letter, a.insertion));
            }
        }
    }
    if (a.out.json) {
        json j = json::array();
        for (const auto& r : rows) {
            j.push_back({{"model", a.model},
                         {"gate", a.gate},
                         {"qubit", r.qubit},
                         {"letter", std::string(1, r.letter)},
                         {"insertion", r.insertion},
                         {"at_boundary", r.at_boundary},
                         {"location", r.location},
                         {"support", r.support},
                         {"leaked_blocks", r.leaked_blocks},
                         {"leakage_fraction", r.leakage_fraction}});
        }
        emit(a.out, j.dump(2) + "\n");
        return 0;
    }
    std::string text = "model,gate,qubit,letter,insertion,at_boundary,location,support,leaked_blocks,leakage_fraction\n";
    for (const auto& r : rows) {
        text += fmt::format("{},{},{},{},{},{},{},{},{},{:.6f}\n", a.model, a.gate, r.qubit, r.letter, r.insertion,
                            r.at_boundary ? 1 : 0, r.location, join(r.support, ' '), join(r.leaked_blocks, ' '),
                            r.leakage_fraction);
    }
    emit(a.out, text);
    return 0;
}

// --- qec-sim ------------------------------------------------------------------

struct QecSimArgs {
    Output out;
    std::string code = "phase3";
    std::string generators;
    std::string logical_x;
    std::string logical_z;
    std::string channel = "0.001,0.001,0.001";
    std::string granularity = "per-pulse";
    std::string model = "xy";
    std::string gate = "logical-x";
    std::string input = "zero";
    std::string lcu = "on";
    long trials = 1000;
    uint64_t seed = 1;
    unsigned threads = 0;
};

BaseCode qec_code(const QecSimArgs& a) {
    if (a.generators.empty()) return preset_by_name(a.code);
    const auto gens = parse_pauli_list(a.generators);
    if (gens.empty()) throw std::invalid_argument("no generators given");
    if (a.logical_x.empty() || a.logical_z.empty()) {
        throw std::invalid_argument("a custom code needs --logical-x and --logical-z");
    }
    return make_base_code(a.code, gens, PauliString::parse(a.logical_x), PauliString::parse(a.logical_z));
}

int run_qec_sim(const QecSimArgs& a) {
    RoundSetup setup;
    setup.code = build_hybrid(qec_code(a));
    setup.model = parse_model(a.model);
    setup.gate = parse_hybrid_gate(a.gate);
    setup.channel = ErrorChannel::parse(a.channel, parse_granularity(a.granularity));
    setup.input = parse_input_state(a.input);
    std::vector<bool> policies;
    if (a.lcu == "on") {
        policies = {true};
    } else if (a.lcu == "off") {
        policies = {false};
    } else if (a.lcu == "both") {
        policies = {false, true};
    } else {
        throw std::invalid_argument("--lcu must be on, off or both");
    }
    const auto rows = sweep(setup, {setup.channel.rates}, policies, a.trials, a.seed, a.threads);
    if (!a.out.json) {
        emit(a.out, sweep_csv(rows));
        return 0;
    }
    json j = json::array();
    for (const auto& r : rows) {
        j.push_back({{"code", setup.code.base.name},
                     {"model", a.model},
                     {"gate", a.gate},
                     {"px", r.rates.px},
                     {"py", r.rates.py},
                     {"pz", r.rates.pz},
                     {"lcu", r.lcu},
                     {"trials", r.trials},
                     {"seed", a.seed},
                     {"clean", r.clean},
                     {"corrected", r.corrected},
                     {"logical_failures", r.logical_failures},
                     {"leakage_failures", r.leakage_failures},
                     {"failure_rate", r.failure_rate},
                     {"wilson_low", r.wilson_low},
                     {"wilson_high", r.wilson_high}});
    }
    emit(a.out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exchange-only fault-tolerance toolkit: synthesis, verification and fault simulation", "exft"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run the identity and invariant suite; exit 0 iff every check passes");
    add_common(v, verify.out);
    v->add_option("--seed", verify.opts.seed, "Master seed");
    v->add_option("--leakage-trials", verify.opts.leakage_trials, "Trials of the paired LCU on/off comparison");
    v->add_option("--leakage-rate", verify.opts.leakage_rate, "Per-qubit fault rate of that comparison");
    v->add_option("--boosting-trials", verify.opts.boosting_trials, "Boosting protocol runs");
    v->add_option("--determinism-trials", verify.opts.determinism_trials, "Trials per determinism run");
    v->add_option("--threads", verify.opts.threads, "Worker threads (0 = hardware concurrency)");

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Emit the pulse sequence of an encoded gate");
    add_common(s, synth.out);
    s->add_option("--model", synth.model, "xy, xxz or heisenberg")->check(CLI::IsMember({"xy", "xxz", "heisenberg"}));
    s->add_option("--gate", synth.gate, "cnot, cp, hadamard or lcu")
        ->check(CLI::IsMember({"cnot", "cp", "hadamard", "lcu"}));
    s->add_flag("--ideal-z", synth.ideal_z, "Use ideal single-qubit Z rotations instead of field sequences");

    LcuSimArgs lcu;
    auto* l = app.add_subcommand("lcu-sim", "Faulty LCU rounds and the n-repetition boosting protocol");
    add_common(l, lcu.out);
    l->add_option("--model", lcu.model, "xy, xxz or heisenberg")->check(CLI::IsMember({"xy", "xxz", "heisenberg"}));
    l->add_option("--p,--rates", lcu.rates, "Comma-separated per-pulse fault rates, one CSV row each");
    l->add_option("--trials", lcu.config.trials, "Rounds for the estimates and protocol runs per rate");
    l->add_option("--seed", lcu.config.seed, "Master seed");
    l->add_option("--confidence,-c", lcu.config.confidence, "Target confidence c");
    l->add_option("--leak-prob", lcu.config.leak_prob, "Probability that the data block starts leaked");
    l->add_option("--max-rounds", lcu.config.max_rounds, "Round cap per protocol run");

    PropagateArgs prop;
    auto* p = app.add_subcommand("propagate", "Propagate single-qubit leakage faults through an encoded gate");
    add_common(p, prop.out);
    p->add_option("--model", prop.model, "xy, xxz or heisenberg")->check(CLI::IsMember({"xy", "xxz", "heisenberg"}));
    p->add_option("--gate", prop.gate, "cnot or cp")->check(CLI::IsMember({"cnot", "cp"}));
    p->add_flag("--sweep-insertions", prop.sweep, "Every insertion point instead of a single one");
    p->add_option("--insertion", prop.insertion, "Pulses applied before the fault");
    p->add_option("--qubits", prop.qubits, "Comma-separated faulty qubits");
    p->add_option("--letters", prop.letters, "Fault letters, e.g. XY");

    QecSimArgs qec;
    auto* q = app.add_subcommand("qec-sim", "Monte-Carlo fault-tolerant round on a hybrid code");
    add_common(q, qec.out);
    q->add_option("--code", qec.code, "Preset name (phase3, perfect5, trivial) or the name of a custom code");
    q->add_option("--generators", qec.generators, "Custom base-code generators, e.g. \"XXI, IXX\"");
    q->add_option("--logical-x", qec.logical_x, "Custom logical X");
    q->add_option("--logical-z", qec.logical_z, "Custom logical Z");
    q->add_option("--channel", qec.channel, "px,py,pz");
    q->add_option("--granularity", qec.granularity, "per-pulse, per-gate or per-idle");
    q->add_option("--model", qec.model, "xy, xxz or heisenberg")->check(CLI::IsMember({"xy", "xxz", "heisenberg"}));
    q->add_option("--gate", qec.gate, "idle or logical-x");
    q->add_option("--input", qec.input, "zero, one, plus or random");
    q->add_option("--lcu", qec.lcu, "on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
    q->add_option("--trials", qec.trials, "Trials per policy");
    q->add_option("--seed", qec.seed, "Master seed");
    q->add_option("--threads", qec.threads, "Worker threads (0 = hardware concurrency); output does not depend on it");

    // The config file's flags go first so that command-line flags take precedence.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        for (size_t i = 0; i < args.size(); ++i) {
            std::string path;
            size_t erase = 0;
            if (args[i] == "--config" && i + 1 < args.size()) {
                path = args[i + 1];
                erase = 2;
            } else if (args[i].rfind("--config=", 0) == 0) {
                path = args[i].substr(9);
                erase = 1;
            }
            if (erase == 0) continue;
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + erase));
            if (args.empty()) throw std::runtime_error("--config needs a subcommand");
            const auto* sub = app.get_subcommand(args[0]);
            const auto extra = config_args(path, *sub);
            args.insert(args.begin() + 1, extra.begin(), extra.end());
            break;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*v) return run_verify(verify);
        if (*s) return run_synth(synth);
        if (*l) return run_lcu_sim_cmd(lcu);
        if (*p) return run_propagate(prop);
        if (*q) return run_qec_sim(qec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
