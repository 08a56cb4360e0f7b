#pragma once

// Leakage-correction unit.  Data block on qubits (1, 2), ancilla block on
// (3, 4) prepared in |0_L> = |01>.  L = sqrt(SWAP) sqrt(SWAP'), with
//   sqrt(SWAP)  = exp[-i pi/4 (Xbar_13 + Xbar_24)],
//   sqrt(SWAP') = exp[-i pi/4 (Xbar_13 Z_2 Z_4 + Xbar_24 Z_1 Z_3)].
// The two factors commute; on a code-subspace data block their product is the
// identity, on a leaked data block a full swap with the ancilla.

#include <array>
#include <optional>
#include <string>

#include "exft/code_2quc.h"
#include "exft/pulse.h"
#include "exft/synthesis.h"

namespace exft {

Matrix build_sqrt_swap();
Matrix build_sqrt_swap_prime();
/// build_sqrt_swap() * build_sqrt_swap_prime().
UnitaryMatrix build_l_ideal();

struct LcuRow {
    std::string input;
    std::string expected;
    /// <expected| L |input>.
    cplx amplitude;
    /// Norm of L|input> outside |expected>.
    double leakage = 0.0;
};

struct LcuActionCheck {
    std::array<LcuRow, 4> rows;
    /// Every row maps to its expected ket with unit modulus.
    bool rows_map_correctly = false;
    /// Largest phase difference between rows after removing the first row's phase.
    double max_relative_phase = 0.0;
    bool common_phase = false;
};

/// The four rows |0_L 0_L>, |1_L 0_L>, |00 0_L>, |11 0_L> -> |0_L 0_L>, |1_L 0_L>, |0_L 00>, |0_L 11>.
LcuActionCheck check_action_table(const Matrix& l, double tol = kTol.op_equal);

/// sqrt(SWAP') from exchange pulses on 4 qubits.  XY: two conjugated Xbar_12 rotations
/// (10 pulses).  Heisenberg/XXZ: Ising-conjugated recoupled rotations, which need the
/// long-range coupling (1, 4).
PulseSequence synth_sqrt_swap_prime(const Device& device, const SynthOptions& opts = {});
/// sqrt(SWAP) followed by sqrt(SWAP'); segments "sqrt-swap" and "sqrt-swap-prime".
PulseSequence synth_lcu(const Device& device, const SynthOptions& opts = {});
/// The 4-qubit device synth_lcu expects for `model` (long range enabled where needed).
Device lcu_device(ModelKind model);

// --- Rounds ---------------------------------------------------------------

struct PauliRates {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
    double total() const { return px + py + pz; }
    /// Throws unless all rates are in [0, 1] and their sum is at most 1.
    void validate() const;
};

/// 'I' or the sampled letter.
char sample_pauli(const PauliRates& rates, Rng& rng);

struct LcuOutcome {
    BlockResult ancilla = BlockResult::ZeroL;
    /// The ancilla was found in a leakage state: a leaked data block was swapped out and reset.
    bool corrected = false;
    int faults = 0;
};

/// Fault-free L on (data block, ancilla block) of a larger register, ancilla measurement and
/// re-preparation of the ancilla in |0_L>.
LcuOutcome lcu_round_ideal(StateVector& state, const BlockLayout& layout, int data_block, int ancilla_block, Rng& rng);

/// On a 4-qubit register: runs `seq` pulse by pulse with Pauli faults sampled after each pulse on
/// the qubits it touches, measures the ancilla and re-prepares it.
LcuOutcome lcu_round(StateVector& state, const PulseSequence& seq, const Device& device, const PauliRates& faults,
                     Rng& rng);

/// Resets block b to |0_L> after a measurement left it in a basis state.
void reprepare_zero(StateVector& state, const BlockLayout& layout, int b, BlockResult measured);

// --- Boosting -------------------------------------------------------------

/// Smallest n >= 1 with 1 - (1 - p_c)^n >= c (compared with a 1e-12 slack).
/// p_c = 1 gives 1; c <= 0 gives 0; p_c = 0, or c = 1 with p_c < 1, is unattainable (nullopt).
std::optional<int> required_repetitions(double p_c, double confidence);

struct BoostResult {
    int n = 0;
    long trials = 0;
    long conclusive = 0;
    long conclusive_correct = 0;
    double rate = 0.0;
    double sigma = 0.0;
};

/// Synthetic protocol: each round finds the ancilla in |0_L> with probability omega; such a
/// no-leakage event is correct with probability p_c.  A run ends after n consecutive no-leakage
/// events (conclusive) or after max_rounds; it is correct when any of its final n events is.
BoostResult simulate_boosting(double p_c, double omega, double confidence, long trials, uint64_t seed,
                              int max_rounds = 1000);

// --- Physical boosting experiment -----------------------------------------

struct LcuSimConfig {
    ModelKind model = ModelKind::XY;
    /// Per-qubit fault probability after each pulse, split evenly over X, Y, Z.
    double p = 1e-3;
    /// Probability that the data block starts in |00> or |11> instead of |0_L> or |1_L>.
    double leak_prob = 0.5;
    double confidence = 0.99;
    long trials = 10000;
    uint64_t seed = 1;
    int max_rounds = 1000;
};

struct LcuSimRow {
    double p_injected = 0.0;
    /// Fraction of single rounds whose ancilla reads |0_L>.
    double omega = 0.0;
    /// P(data correct and ancilla |0_L>) / omega over single rounds.
    double p_c = 0.0;
    /// Repetitions for the target confidence; empty when unattainable.
    std::optional<int> n_used;
    /// Fraction of protocol runs that conclude with a correct data block.
    double success_rate = 0.0;
    long trials = 0;
};

/// Estimates omega and p_c from `trials` single faulty rounds, then runs `trials` boosting
/// protocols (stop after n consecutive |0_L> ancilla readings) with the synthesized LCU.
/// The data block is correct when it reads back its input, or |0_L> after a leaked input.
LcuSimRow run_lcu_sim(const LcuSimConfig& config);

}  // namespace exft
