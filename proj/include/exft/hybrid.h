#pragma once

// Hybrid stabilizer/2QUC codes: a base stabilizer code whose qubits are 2QUC
// blocks.  Logical letters are expanded block-wise as
//   X -> X X,   Y -> Y X,   Z -> Z I,
// each of which acts on the block code subspace exactly as the Pauli it replaces.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exft/code_2quc.h"
#include "exft/pauli.h"
#include "exft/pulse.h"

namespace exft {

struct BaseCode {
    std::string name;
    int n = 0;
    std::vector<PauliString> generators;
    /// Logical operators of the base code; used to build its two codewords.
    PauliString logical_x;
    PauliString logical_z;
};

/// Validates lengths, commutation and logical-operator consistency.
BaseCode make_base_code(std::string name, const std::vector<PauliString>& generators, const PauliString& logical_x,
                        const PauliString& logical_z);

namespace presets {
/// Three-qubit phase-flip code {XXI, IXX}; |0> = |+++>, |1> = |--->.
BaseCode phase3();
/// Five-qubit perfect code.
BaseCode perfect5();
/// One block, no generators.
BaseCode trivial();
}  // namespace presets

/// "phase3", "perfect5" or "trivial".
BaseCode preset_by_name(const std::string& name);

/// Physical Pauli replacing logical letter `letter` on block b.
PauliString expand_letter(char letter, int block, int n_blocks);
/// Block-wise expansion of a logical Pauli string; the phase is carried over.
PauliString expand(const PauliString& logical);

struct HybridCode {
    BaseCode base;
    BlockLayout layout{1};
    std::vector<PauliString> generators;
    PauliString logical_x;
    PauliString logical_z;
    /// Base codewords in the logical (block) basis.
    StateVector base_zero{1};
    StateVector base_one{1};
    /// Encoded codewords on 2 n physical qubits.
    StateVector zero{1};
    StateVector one{1};
    /// Minimum-weight logical recovery per syndrome.
    std::map<std::vector<int>, PauliString> decoder;

    int num_blocks() const { return base.n; }
    int num_qubits() const { return 2 * base.n; }
    /// alpha |0_H> + beta |1_H>, normalized.
    StateVector codeword(cplx alpha, cplx beta) const;
};

HybridCode build_hybrid(const BaseCode& base);

// --- Two-qubit block error classification ---------------------------------

enum class ErrorVerdict { Identity, Logical, Leakage, Mixed };

std::string to_string(ErrorVerdict v);

struct ErrorClassification {
    /// Two letters acting on (first, second) qubit of a block.
    std::string pauli;
    ErrorVerdict verdict = ErrorVerdict::Identity;
    /// For Logical: I, X, Y or Z, and the power of i multiplying it on the code subspace.
    char logical = 'I';
    int phase_power = 0;
    std::string describe() const;
};

/// Classification by the operator's action on the block code and leakage subspaces.
ErrorClassification classify_block_error(const std::string& two_letters);
/// All 16 two-letter Paulis in II, IX, ..., ZZ order.
std::vector<ErrorClassification> classify_all_block_errors();

// --- Syndrome extraction and correction -----------------------------------

using Syndrome = std::vector<int>;

std::string to_string(const Syndrome& s);

/// Logical-level syndrome of a base-code Pauli.
Syndrome logical_syndrome(const PauliString& logical_error, const BaseCode& base);

/// Thrown when syndrome extraction is attempted on a state with leakage above kTol.leakage.
struct LeakagePrecondition : std::domain_error {
    using std::domain_error::domain_error;
};

/// Ideal projective measurement of each expanded generator, collapsing `state`.
/// Without an rng, a state that is not a joint eigenstate is rejected.
Syndrome extract_syndrome(StateVector& state, const HybridCode& code, Rng* rng = nullptr);

struct Correction {
    bool recognized = false;
    /// Logical-level recovery and its physical expansion.
    PauliString logical;
    PauliString physical;
};

/// Minimum-weight logical recovery; ties broken lexicographically by block index, then Z < X < Y.
Correction decode_syndrome(const Syndrome& syndrome, const HybridCode& code);
/// Applies decode_syndrome's recovery; leaves the state untouched on an unrecognized syndrome.
Correction correct(StateVector& state, const Syndrome& syndrome, const HybridCode& code);

/// |<target|state>|^2 for normalized inputs.
double fidelity(const StateVector& state, const StateVector& target);

// --- Leakage propagation through encoded gates ----------------------------

struct PropagationResult {
    /// Fault inserted after this many pulses (0 = before the gate).
    int insertion = 0;
    int qubit = 1;
    char letter = 'X';
    /// True when the insertion point is a segment boundary or an end of the sequence.
    bool at_boundary = false;
    /// Segment containing the insertion point (or "boundary").
    std::string location;
    /// Minimal qubit set supporting the effective error on the code subspace.
    std::vector<int> support;
    /// Blocks whose leakage subspace the effective error reaches.
    std::vector<int> leaked_blocks;
    /// ||(1 - P) E P|| / ||E P||.
    double leakage_fraction = 0.0;
};

/// Effective error U_after F U_before U^dagger for a single-qubit Pauli fault F, restricted
/// to the code subspace, for one insertion point.
PropagationResult propagate_fault(const PulseSequence& gate, const Device& device, const BlockLayout& layout,
                                  int qubit, char letter, int insertion);

/// Every insertion point 0..pulses for the given fault.
std::vector<PropagationResult> sweep_insertions(const PulseSequence& gate, const Device& device,
                                                const BlockLayout& layout, int qubit, char letter);

/// Smallest qubit set S with m = (F_S (x) 1) p for some F_S; m and p are full-register matrices.
std::vector<int> minimal_support(const Matrix& m, const Matrix& p, int n_qubits, double tol = 1e-9);

}  // namespace exft
