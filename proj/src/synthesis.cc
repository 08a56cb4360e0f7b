#include "exft/synthesis.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace exft {

using std::numbers::pi;

namespace {

double swap_duration(int i, int k, const Device& device) {
    const Coupling& c = device.graph.at(i, k);
    if (c.J == 0.0) {
        throw std::invalid_argument("single-Z generation needs a nonzero exchange coupling J_ik");
    }
    return pi / (4.0 * c.J);
}

double exchange_j(int i, int j, const Device& device) {
    const Coupling& c = device.graph.at(i, j);
    if (c.J == 0.0) {
        throw std::invalid_argument("coupling (" + std::to_string(i) + "," + std::to_string(j) + ") has J = 0");
    }
    return c.J;
}

}  // namespace

Matrix conjugate(const Matrix& i_k, double phi, const Matrix& i_i, double theta) {
    // e^{i theta I} = expm_hermitian(I, -theta).
    return expm_hermitian(i_k, phi) * expm_hermitian(i_i, -theta) * expm_hermitian(i_k, -phi);
}

Matrix rotated_exponential(const Matrix& i_i, const Matrix& i_j, double phi, double theta) {
    return expm_hermitian(Matrix(i_i * std::cos(phi) + i_j * std::sin(phi)), -theta);
}

PulseSequence conjugated(const PulseSequence& outer, const PulseSequence& inner) {
    PulseSequence seq;
    seq.append(outer.inverse());
    seq.append(inner);
    seq.append(outer);
    return seq;
}

PulseSequence make_single_z(int i, int k, double t, const Device& device, const SynthOptions& opts) {
    if (i == k) {
        throw std::invalid_argument("make_single_z needs two distinct qubits");
    }
    const double delta_ik = device.field.delta(i, k);
    if (delta_ik == 0.0) {
        throw std::invalid_argument("degenerate field frequencies on the refocusing pair");
    }
    PulseSequence seq("single-z");
    if (opts.ideal_z) {
        // e^{(i/2) t D Z} = e^{-i angle Z} with angle = -t D / 2.
        seq.append(IdealZPulse{i, -0.5 * t * delta_ik});
        seq.append(IdealZPulse{k, 0.5 * t * delta_ik});
        return seq;
    }
    const double tau = swap_duration(i, k, device);
    seq.append(ExchangePulse{std::min(i, k), std::max(i, k), -tau});
    seq.append(FieldPulse{t});
    seq.append(ExchangePulse{std::min(i, k), std::max(i, k), tau});
    seq.append(FieldPulse{-t});
    return seq;
}

PulseSequence zbar_rotation(int i, int k, double phi, const Device& device, const SynthOptions& opts) {
    const double delta_ik = device.field.delta(i, k);
    if (delta_ik == 0.0) {
        throw std::invalid_argument("degenerate field frequencies on the refocusing pair");
    }
    auto seq = make_single_z(i, k, -phi / delta_ik, device, opts);
    seq.set_gate("zbar-rotation");
    return seq;
}

PulseSequence z_pair_flip(int i, int k, const Device& device, const SynthOptions& opts) {
    const double delta_ki = device.field.delta(k, i);
    if (delta_ki == 0.0) {
        throw std::invalid_argument("degenerate field frequencies on the refocusing pair");
    }
    auto seq = make_single_z(i, k, pi / delta_ki, device, opts);
    seq.set_gate("z-pair-flip");
    return seq;
}

int recoupling_helper(int i, int j, const Device& device) {
    for (int k = 1; k <= device.num_qubits(); ++k) {
        if (k == i || k == j) continue;
        if (device.graph.find(i, k) && device.field.delta(i, k) != 0.0) return k;
    }
    throw std::invalid_argument("recoupling of (" + std::to_string(i) + "," + std::to_string(j) +
                                ") needs a third qubit coupled to " + std::to_string(i));
}

PulseSequence recouple(int i, int j, RecoupleSign sign, double t, const Device& device, const SynthOptions& opts) {
    device.graph.at(i, j);  // throws when the pair is not coupled
    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    PulseSequence seq(sign == RecoupleSign::Plus ? "recouple+" : "recouple-");
    if (device.model == ModelKind::XY) {
        seq.add_note("recoupling unnecessary in the XY model: Xbar is directly available and Jz = 0");
        if (sign == RecoupleSign::Plus && t != 0.0) seq.append(ExchangePulse{lo, hi, t});
        return seq;
    }
    const int k = recoupling_helper(i, j, device);
    const PulseSequence flip = z_pair_flip(i, k, device, opts);
    const double inner = sign == RecoupleSign::Plus ? -0.5 * t : 0.5 * t;
    // Time order: Z-flip, e^{-/+ ...}, Z-flip, then e^{-it H/2}.
    seq.append(flip);
    seq.append(ExchangePulse{lo, hi, inner});
    seq.append(flip);
    seq.append(ExchangePulse{lo, hi, 0.5 * t});
    return seq;
}

PulseSequence xbar_rotation(int i, int j, double phi, const Device& device, const SynthOptions& opts,
                            bool within_block) {
    const double J = exchange_j(i, j, device);
    const double t = phi / (2.0 * J);
    if (device.model == ModelKind::XY || within_block) {
        PulseSequence seq("xbar-rotation");
        seq.append(ExchangePulse{std::min(i, j), std::max(i, j), t});
        return seq;
    }
    auto seq = recouple(i, j, RecoupleSign::Plus, t, device, opts);
    seq.set_gate("xbar-rotation");
    return seq;
}

PulseSequence ising_rotation(int i, int j, double theta, const Device& device, const SynthOptions& opts) {
    if (device.model == ModelKind::XY) {
        throw std::invalid_argument("Ising rotations are not available in the XY model");
    }
    const Coupling& c = device.graph.at(i, j);
    auto seq = recouple(i, j, RecoupleSign::Minus, theta / c.Jz, device, opts);
    seq.set_gate("ising-rotation");
    return seq;
}

PulseSequence ybar_rotation(const BlockQubits& block, double phi, const Device& device, const SynthOptions& opts) {
    // e^{-i pi/4 Zbar} Xbar e^{i pi/4 Zbar} = Ybar.
    auto outer = zbar_rotation(block.first, block.second, pi / 4.0, device, opts);
    auto inner = xbar_rotation(block.first, block.second, phi, device, opts, true);
    auto seq = conjugated(outer, inner);
    seq.set_gate("ybar-rotation");
    return seq;
}

bool blocks_adjacent(const BlockQubits& a, const BlockQubits& b) {
    return std::abs(a.second - b.first) == 1 || std::abs(b.second - a.first) == 1;
}

PulseSequence synth_encoded_hadamard(const BlockQubits& block, const Device& device, const SynthOptions& opts) {
    const auto [a, b] = block;
    PulseSequence seq("hadamard");
    seq.set_model(to_string(device.model));
    seq.append(xbar_rotation(a, b, pi / 4.0, device, opts, true));
    seq.append(zbar_rotation(a, b, pi / 4.0, device, opts));
    seq.append(xbar_rotation(a, b, pi / 4.0, device, opts, true));
    return seq;
}

PulseSequence synth_encoded_cp(const BlockQubits& control, const BlockQubits& target, const Device& device,
                               const SynthOptions& opts) {
    if (!blocks_adjacent(control, target)) {
        throw std::invalid_argument("encoded CP needs adjacent blocks");
    }
    // CP is symmetric; order the blocks along the chain.
    const auto& lower = control.first < target.first ? control : target;
    const auto& upper = control.first < target.first ? target : control;
    const int q1 = lower.first, q2 = lower.second, q3 = upper.first, q4 = upper.second;

    PulseSequence seq("cp");
    seq.set_model(to_string(device.model));

    PulseSequence phase_fix;
    phase_fix.append(zbar_rotation(q1, q2, pi / 4.0, device, opts));
    phase_fix.append(zbar_rotation(q3, q4, pi / 4.0, device, opts));
    seq.append(phase_fix, "phase-fix");

    PulseSequence core;
    if (device.model == ModelKind::XY) {
        const auto inner = conjugated(xbar_rotation(q1, q2, pi / 2.0, device, opts),
                                      xbar_rotation(q2, q3, pi / 2.0, device, opts));
        core = conjugated(xbar_rotation(q1, q3, pi / 4.0, device, opts), inner);
    } else {
        // Each exchange pulse runs for tau with tau Jz = pi/8, so the pair gives e^{-i pi/4 Z2 Z3}.
        const Coupling& c = device.graph.at(q2, q3);
        const double tau = pi / (8.0 * c.Jz);
        const PulseSequence flip = z_pair_flip(q1, q2, device, opts);
        PulseSequence ex;
        ex.append(ExchangePulse{q2, q3, tau});
        core.append(conjugated(flip, ex));
        core.append(ex);
    }
    seq.append(core, "controlled-phase");
    return seq;
}

PulseSequence synth_encoded_cnot(const BlockQubits& control, const BlockQubits& target, const Device& device,
                                 const SynthOptions& opts) {
    PulseSequence seq("cnot");
    seq.set_model(to_string(device.model));
    const auto w = synth_encoded_hadamard(target, device, opts);
    seq.append(w, "W");
    seq.append(synth_encoded_cp(control, target, device, opts), "CP");
    seq.append(w, "W");
    return seq;
}

}  // namespace exft
