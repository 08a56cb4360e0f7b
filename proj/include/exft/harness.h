#pragma once

// Seeded Monte-Carlo fault simulation of one fault-tolerant round on a hybrid
// code: encoded gate pulses with sampled Pauli faults, optional LCUs on every
// data block, ideal syndrome extraction and minimum-weight correction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exft/hybrid.h"
#include "exft/lcu.h"

namespace exft {

enum class Granularity { PerPulse, PerGate, PerIdle };

std::string to_string(Granularity g);
Granularity parse_granularity(const std::string& s);

struct ErrorChannel {
    PauliRates rates;
    Granularity granularity = Granularity::PerPulse;
    /// "px,py,pz".
    static ErrorChannel parse(const std::string& triple, Granularity g = Granularity::PerPulse);
};

struct ErrorEvent {
    int qubit = 0;
    char letter = 'I';
    /// Number of pulses applied before the fault.
    int location = 0;
};

enum class Verdict { Clean, Corrected, LogicalFailure, LeakageFailure };

std::string to_string(Verdict v);

struct TrialRecord {
    uint64_t trial = 0;
    uint64_t seed = 0;
    std::vector<ErrorEvent> events;
    std::vector<LcuOutcome> lcu;
    Syndrome syndrome;
    double fidelity = 0.0;
    Verdict verdict = Verdict::Clean;
    /// Data register after correction, when RoundSetup::keep_state is set.
    std::optional<StateVector> final_state;
};

enum class HybridGate { Idle, LogicalX };

std::string to_string(HybridGate g);
HybridGate parse_hybrid_gate(const std::string& s);

enum class InputState { Zero, One, Plus, Random };

std::string to_string(InputState s);
InputState parse_input_state(const std::string& s);

struct RoundSetup {
    HybridCode code;
    ModelKind model = ModelKind::XY;
    HybridGate gate = HybridGate::LogicalX;
    ErrorChannel channel;
    bool lcu = true;
    InputState input = InputState::Zero;
    /// When set, these faults are injected instead of sampling the channel.
    std::optional<std::vector<ErrorEvent>> forced_faults;
    bool keep_state = false;
};

/// Pulses of the hybrid-level gate on the 2n data qubits.
PulseSequence hybrid_gate_sequence(const HybridCode& code, HybridGate gate, const Device& device);

/// One round; trial streams are derived from (master_seed, trial) only.
TrialRecord run_ft_round(const RoundSetup& setup, uint64_t trial, uint64_t master_seed);

struct SweepRow {
    PauliRates rates;
    bool lcu = true;
    long trials = 0;
    long clean = 0;
    long corrected = 0;
    long logical_failures = 0;
    long leakage_failures = 0;
    double failure_rate = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Header plus one line per row, fixed formatting.
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval.
Interval wilson_interval(long successes, long trials, double z = 1.959963984540054);

/// Runs `trials` rounds per grid point and policy; deterministic for a fixed master seed at any thread count.
std::vector<SweepRow> sweep(const RoundSetup& base, const std::vector<PauliRates>& grid, const std::vector<bool>& lcu,
                            long trials, uint64_t master_seed, unsigned threads = 0);

/// Records for trials [0, trials), computed in parallel and returned in trial order.
std::vector<TrialRecord> run_trials(const RoundSetup& setup, long trials, uint64_t master_seed, unsigned threads = 0);

// --- Transversality -------------------------------------------------------

struct TransversalityEntry {
    /// Single-block error on the logical-block register, e.g. "XIIIII".
    std::string error;
    std::vector<int> image_support;
    /// Per codeword, the number of its blocks the image touches.
    std::vector<int> blocks_per_codeword;
    bool spreads = false;
};

struct TransversalityReport {
    std::string gate;
    std::vector<TransversalityEntry> entries;
    bool transversal = true;
};

/// Qubits on which `m` acts nontrivially, i.e. fails to commute with X_q or Z_q.
std::vector<int> operator_support(const Matrix& m, int n_qubits, double tol = 1e-9);

/// Conjugates every single-block Pauli error through `gate`, a unitary on `codewords` * `blocks`
/// logical block qubits (codeword c owns blocks c*blocks+1 .. (c+1)*blocks).
TransversalityReport transversality_check(const std::string& name, const Matrix& gate, int codewords, int blocks);

/// Block-pairwise CNOT between two codewords of `blocks` blocks each.
Matrix transversal_cnot(int blocks);
/// CNOT from block 1 to block 2 of the first codeword; spreads errors within a codeword.
Matrix nontransversal_cnot(int blocks);

}  // namespace exft
