#include "exft/code_2quc.h"

#include <stdexcept>

namespace exft {

namespace {

uint64_t physical_index(uint64_t logical, int n_blocks) {
    uint64_t phys = 0;
    for (int b = 1; b <= n_blocks; ++b) {
        const bool one = (logical >> (n_blocks - b)) & 1;
        phys = (phys << 2) | (one ? kOneL : kZeroL);
    }
    return phys;
}

unsigned block_bits(uint64_t phys, const BlockLayout& layout, int b) {
    return static_cast<unsigned>((phys >> (2 * (layout.num_blocks() - b))) & 0b11);
}

void check_block(const BlockLayout& layout, int b) {
    if (b < 1 || b > layout.num_blocks()) {
        throw std::out_of_range("block " + std::to_string(b) + " out of range");
    }
}

Matrix encoder(const BlockLayout& layout) {
    const Eigen::Index dl = Eigen::Index{1} << layout.num_blocks();
    const Eigen::Index dp = Eigen::Index{1} << layout.num_qubits();
    Matrix e = Matrix::Zero(dp, dl);
    for (Eigen::Index l = 0; l < dl; ++l) {
        e(static_cast<Eigen::Index>(physical_index(static_cast<uint64_t>(l), layout.num_blocks())), l) = 1.0;
    }
    return e;
}

}  // namespace

BlockLayout::BlockLayout(int n_blocks) : n_blocks_(n_blocks) {
    if (n_blocks < 1) throw std::invalid_argument("layout needs at least one block");
    check_register_size(2 * n_blocks);
}

BlockQubits BlockLayout::block(int b) const {
    check_block(*this, b);
    return {2 * b - 1, 2 * b};
}

StateVector encode(const StateVector& logical, const BlockLayout& layout) {
    if (logical.num_qubits() != layout.num_blocks()) {
        throw std::invalid_argument("logical state has " + std::to_string(logical.num_qubits()) +
                                    " qubits, layout has " + std::to_string(layout.num_blocks()) + " blocks");
    }
    Vector amps = Vector::Zero(Eigen::Index{1} << layout.num_qubits());
    for (uint64_t l = 0; l < logical.dim(); ++l) {
        amps[static_cast<Eigen::Index>(physical_index(l, layout.num_blocks()))] = logical[l];
    }
    return StateVector(layout.num_qubits(), std::move(amps));
}

StateVector encode_bits(const std::string& logical_bits, const BlockLayout& layout) {
    return encode(StateVector::from_bits(logical_bits), layout);
}

DecodeResult decode(const StateVector& physical, const BlockLayout& layout, bool raw) {
    if (physical.num_qubits() != layout.num_qubits()) {
        throw std::invalid_argument("physical state size does not match the layout");
    }
    const uint64_t dl = uint64_t{1} << layout.num_blocks();
    Vector logical(static_cast<Eigen::Index>(dl));
    for (uint64_t l = 0; l < dl; ++l) {
        logical[static_cast<Eigen::Index>(l)] = physical[physical_index(l, layout.num_blocks())];
    }
    DecodeResult out;
    const double in_code = logical.squaredNorm();
    const double total = physical.amplitudes().squaredNorm();
    out.leakage_weight = total > 0.0 ? std::max(0.0, 1.0 - in_code / total) : 1.0;
    if (in_code <= kTol.norm * kTol.norm) {
        out.leakage_weight = 1.0;
        return out;
    }
    StateVector sv(layout.num_blocks(), std::move(logical));
    if (!raw) sv.normalize();
    out.logical = std::move(sv);
    return out;
}

double block_leakage_weight(const StateVector& state, const BlockLayout& layout, int b) {
    check_block(layout, b);
    double w = 0.0;
    for (uint64_t i = 0; i < state.dim(); ++i) {
        const unsigned bits = block_bits(i, layout, b);
        if (bits != kZeroL && bits != kOneL) w += std::norm(state[i]);
    }
    return w;
}

double leakage_weight(const StateVector& state, const BlockLayout& layout) {
    double w = 0.0;
    for (uint64_t i = 0; i < state.dim(); ++i) {
        for (int b = 1; b <= layout.num_blocks(); ++b) {
            const unsigned bits = block_bits(i, layout, b);
            if (bits != kZeroL && bits != kOneL) {
                w += std::norm(state[i]);
                break;
            }
        }
    }
    return w;
}

Subspace code_subspace(const BlockLayout& layout) { return Subspace(layout.num_qubits(), encoder(layout)); }

Matrix block_code_projector(const BlockLayout& layout, int b) {
    check_block(layout, b);
    const Eigen::Index d = Eigen::Index{1} << layout.num_qubits();
    Matrix p = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const unsigned bits = block_bits(static_cast<uint64_t>(i), layout, b);
        if (bits == kZeroL || bits == kOneL) p(i, i) = 1.0;
    }
    return p;
}

Matrix block_leakage_projector(const BlockLayout& layout, int b) {
    const Eigen::Index d = Eigen::Index{1} << layout.num_qubits();
    return Matrix::Identity(d, d) - block_code_projector(layout, b);
}

Matrix logical_to_physical(const Matrix& logical_op, const BlockLayout& layout) {
    const Matrix e = encoder(layout);
    if (logical_op.rows() != e.cols() || logical_op.cols() != e.cols()) {
        throw std::invalid_argument("logical operator dimension does not match the layout");
    }
    const Eigen::Index d = e.rows();
    return e * logical_op * e.adjoint() + (Matrix::Identity(d, d) - e * e.adjoint());
}

Matrix physical_to_logical(const Matrix& physical_op, const BlockLayout& layout) {
    const Matrix e = encoder(layout);
    if (physical_op.rows() != e.rows() || physical_op.cols() != e.rows()) {
        throw std::invalid_argument("physical operator dimension does not match the layout");
    }
    return e.adjoint() * physical_op * e;
}

std::string to_string(BlockResult r) {
    switch (r) {
        case BlockResult::ZeroL: return "0L";
        case BlockResult::OneL: return "1L";
        case BlockResult::Leaked00: return "00";
        case BlockResult::Leaked11: return "11";
    }
    return "?";
}

MeasurementOutcome measure_block(StateVector& state, const BlockLayout& layout, int b, Rng& rng,
                                 double misassignment) {
    check_block(layout, b);
    if (state.num_qubits() != layout.num_qubits()) {
        throw std::invalid_argument("state size does not match the layout");
    }
    // Outcome slot for each block bit pattern: 01 -> ZeroL, 10 -> OneL, 00, 11.
    constexpr int slot_of[4] = {2, 0, 1, 3};
    constexpr BlockResult result_of[4] = {BlockResult::ZeroL, BlockResult::OneL, BlockResult::Leaked00,
                                          BlockResult::Leaked11};
    MeasurementOutcome out;
    out.block = b;
    for (uint64_t i = 0; i < state.dim(); ++i) {
        out.probabilities[slot_of[block_bits(i, layout, b)]] += std::norm(state[i]);
    }
    const double total = out.probabilities[0] + out.probabilities[1] + out.probabilities[2] + out.probabilities[3];
    for (double& p : out.probabilities) p /= total;

    const double r = uniform01(rng);
    int slot = 3;
    double acc = 0.0;
    for (int s = 0; s < 4; ++s) {
        acc += out.probabilities[s];
        if (r < acc && out.probabilities[s] > 0.0) {
            slot = s;
            break;
        }
    }
    while (out.probabilities[slot] == 0.0) --slot;  // guards round-off at the top end

    Vector& amps = state.amplitudes();
    for (uint64_t i = 0; i < state.dim(); ++i) {
        if (slot_of[block_bits(i, layout, b)] != slot) amps[static_cast<Eigen::Index>(i)] = 0.0;
    }
    state.normalize();

    int reported = slot;
    if (misassignment > 0.0 && uniform01(rng) < misassignment) {
        const int shift = 1 + static_cast<int>(uniform01(rng) * 3.0);
        reported = (slot + shift) % 4;
    }
    out.result = result_of[reported];
    return out;
}

}  // namespace exft
