#pragma once

// Two-qubit universal code: block i holds one logical qubit on physical qubits
// (2i-1, 2i) with |0_L> = |0 1>, |1_L> = |1 0>.  The block's leakage subspace
// is span{|00>, |11>}.

#include <array>
#include <optional>

#include "exft/linalg.h"
#include "exft/random.h"
#include "exft/synthesis.h"

namespace exft {

class BlockLayout {
   public:
    explicit BlockLayout(int n_blocks);
    int num_blocks() const { return n_blocks_; }
    int num_qubits() const { return 2 * n_blocks_; }
    /// 1-based block index.
    BlockQubits block(int b) const;
    /// Block containing physical qubit q.
    int block_of(int q) const { return (q + 1) / 2; }

   private:
    int n_blocks_;
};

/// Physical 4-dim block basis index (bits of the two block qubits) for |0_L>, |1_L>.
inline constexpr unsigned kZeroL = 0b01;
inline constexpr unsigned kOneL = 0b10;

/// alpha|0_L> + beta|1_L> per block; logical qubit b maps to block b.
StateVector encode(const StateVector& logical, const BlockLayout& layout);
/// Logical computational basis state given as bits, e.g. "01".
StateVector encode_bits(const std::string& logical_bits, const BlockLayout& layout);

struct DecodeResult {
    /// Empty when the state has no code-subspace component.
    std::optional<StateVector> logical;
    double leakage_weight = 0.0;
    bool failed() const { return !logical.has_value(); }
};

/// Projection onto the joint code subspace expressed in the logical basis; renormalized unless `raw`.
DecodeResult decode(const StateVector& physical, const BlockLayout& layout, bool raw = false);

/// Squared norm of the part of `state` outside block b's code subspace.
double block_leakage_weight(const StateVector& state, const BlockLayout& layout, int b);
/// Squared norm outside the joint code subspace.
double leakage_weight(const StateVector& state, const BlockLayout& layout);

/// Joint code subspace (columns ordered by logical basis index).
Subspace code_subspace(const BlockLayout& layout);
/// Projector onto block b's code subspace (identity on other qubits).
Matrix block_code_projector(const BlockLayout& layout, int b);
/// Projector onto block b's leakage subspace.
Matrix block_leakage_projector(const BlockLayout& layout, int b);

/// E U E^dagger + (1 - E E^dagger), E the encoding isometry.
Matrix logical_to_physical(const Matrix& logical_op, const BlockLayout& layout);
/// E^dagger U E.
Matrix physical_to_logical(const Matrix& physical_op, const BlockLayout& layout);

enum class BlockResult { ZeroL, OneL, Leaked00, Leaked11 };

std::string to_string(BlockResult r);

struct MeasurementOutcome {
    int block = 0;
    BlockResult result = BlockResult::ZeroL;
    /// Born probabilities of ZeroL, OneL, Leaked00, Leaked11.
    std::array<double, 4> probabilities{};
};

/// Projective measurement of block b in its {|01>, |10>, |00>, |11>} basis.  Collapses `state`.
/// With misassignment > 0 the reported label is replaced, with that probability, by one of the
/// other three labels chosen uniformly; the collapse follows the true outcome.
MeasurementOutcome measure_block(StateVector& state, const BlockLayout& layout, int b, Rng& rng,
                                 double misassignment = 0.0);

}  // namespace exft
