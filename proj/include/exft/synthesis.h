#pragma once

// Pulse-level synthesis of encoded operations from exchange pulses and the
// global field.
//
// Notation used below: C^phi_A o U = e^{-i phi A} U e^{i phi A}.

#include <utility>

#include "exft/hamiltonians.h"
#include "exft/pulse.h"

namespace exft {

/// Physical qubits (first, second) of one 2QUC block.
using BlockQubits = std::pair<int, int>;

struct SynthOptions {
    /// Emit ideal Z rotations instead of field-based single-Z sequences.
    bool ideal_z = false;
};

// --- Operator-level identity --------------------------------------------

/// e^{-i phi I_k} e^{i theta I_i} e^{i phi I_k}.
Matrix conjugate(const Matrix& i_k, double phi, const Matrix& i_i, double theta);
/// e^{i theta (I_i cos phi + I_j sin phi)}, equal to conjugate(...) when [I_i, I_j] = i I_k cyclically.
Matrix rotated_exponential(const Matrix& i_i, const Matrix& i_j, double phi, double theta);

// --- Sequence combinators --------------------------------------------------

/// outer * inner * outer^dagger as a sequence: outer^-1, inner, outer.
PulseSequence conjugated(const PulseSequence& outer, const PulseSequence& inner);

// --- Primitives ------------------------------------------------------------

/// Field refocusing: e^{it H0} (C^{pi/4}_{H_ik} o e^{-it H0}) = e^{(i/2) t D_ki Z_k} e^{(i/2) t D_ik Z_i}.
/// The swap-type conjugating pulse runs for pi / (4 J_ik).
PulseSequence make_single_z(int i, int k, double t, const Device& device, const SynthOptions& opts = {});

/// e^{-i phi (Z_i - Z_k) / 2}, i.e. e^{-i phi Zbar_ik}.
PulseSequence zbar_rotation(int i, int k, double phi, const Device& device, const SynthOptions& opts = {});

/// Exactly Z_i Z_k (the t D_ki = pi case of make_single_z).
PulseSequence z_pair_flip(int i, int k, const Device& device, const SynthOptions& opts = {});

enum class RecoupleSign { Plus, Minus };

/// e^{-it H_ij/2} (C^{pi/2}_{Z_i} o e^{+-it H_ij/2}); compiles to e^{-2it J Xbar_ij} (Plus) or
/// e^{-it Jz Z_i Z_j} (Minus).  The Z_i conjugation is realized as Z_i Z_k with a helper
/// qubit k outside {i, j} coupled to i, whose action commutes through H_ij.
/// In the XY model recoupling is unnecessary: Plus returns the bare exchange pulse, Minus
/// the empty sequence, each carrying an advisory note.
PulseSequence recouple(int i, int j, RecoupleSign sign, double t, const Device& device,
                       const SynthOptions& opts = {});

/// Smallest k outside {i, j} coupled to i; throws when none exists.
int recoupling_helper(int i, int j, const Device& device);

/// e^{-i phi Xbar_ij}.  XY: one exchange pulse.  Heisenberg/XXZ: recoupled, exact on the whole
/// register; with `within_block` a bare exchange pulse is used instead, which equals the target
/// on the block's code subspace up to a global phase (Z_i Z_j = -1 there).
PulseSequence xbar_rotation(int i, int j, double phi, const Device& device, const SynthOptions& opts = {},
                            bool within_block = false);

/// e^{-i theta Z_i Z_j}.  Not available in the XY model.
PulseSequence ising_rotation(int i, int j, double theta, const Device& device, const SynthOptions& opts = {});

/// e^{-i phi Ybar} on a block, as C^{pi/4}_{Zbar} o e^{-i phi Xbar}.
PulseSequence ybar_rotation(const BlockQubits& block, double phi, const Device& device,
                            const SynthOptions& opts = {});

// --- Encoded gates ---------------------------------------------------------

/// Wbar = e^{i pi/2} e^{-i pi/4 Xbar} e^{-i pi/4 Zbar} e^{-i pi/4 Xbar} on `block`.
PulseSequence synth_encoded_hadamard(const BlockQubits& block, const Device& device, const SynthOptions& opts = {});

/// Controlled phase between adjacent blocks.  XY: the nested conjugation
/// i {C^{pi/4}_{X13} o C^{pi/2}_{X12} o e^{-i pi/2 X23}} followed by the
/// e^{-i pi/8 (Z1 - Z2)} e^{-i pi/8 (Z3 - Z4)} phase fix.  Heisenberg/XXZ:
/// e^{-i tau H_23} (C^pi_{Zbar_12} o e^{-i tau H_23}) = e^{-2 i tau Jz Z_2 Z_3} with
/// tau Jz = pi/8, plus the same phase fix.
PulseSequence synth_encoded_cp(const BlockQubits& control, const BlockQubits& target, const Device& device,
                               const SynthOptions& opts = {});

/// CNOT = Wbar_T CPbar Wbar_T; segments "W", "CP", "W".
PulseSequence synth_encoded_cnot(const BlockQubits& control, const BlockQubits& target, const Device& device,
                                 const SynthOptions& opts = {});

/// Blocks (2b-1, 2b) and (2b+1, 2b+2) style adjacency: second qubit of one next to the first of the other.
bool blocks_adjacent(const BlockQubits& a, const BlockQubits& b);

}  // namespace exft
