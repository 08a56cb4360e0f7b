#pragma once

// Pulse sequences over the available interactions.
//
// A sequence is listed in temporal order: pulses[0] acts first, so the
// compiled unitary is U = U_last * ... * U_1.

#include <istream>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "exft/hamiltonians.h"
#include "exft/linalg.h"

namespace exft {

/// e^{-i t H_ij} with the device's coupling (J_ij, Jz_ij).
struct ExchangePulse {
    int i = 0;
    int j = 0;
    double t = 0.0;
    bool operator==(const ExchangePulse&) const = default;
};

/// e^{-i t H_0}, the global field acting on every qubit.
struct FieldPulse {
    double t = 0.0;
    bool operator==(const FieldPulse&) const = default;
};

/// e^{-i angle Z_q}.  Only emitted by the ideal-Z compiler mode.
struct IdealZPulse {
    int q = 0;
    double angle = 0.0;
    bool operator==(const IdealZPulse&) const = default;
};

using Pulse = std::variant<ExchangePulse, FieldPulse, IdealZPulse>;

/// Qubits a pulse acts on (every qubit for FieldPulse).
std::vector<int> pulse_support(const Pulse& pulse, int n_qubits);

/// Named contiguous range [begin, end) of a sequence, e.g. the factors of CNOT = W CP W.
struct Segment {
    std::string name;
    size_t begin = 0;
    size_t end = 0;
};

class PulseSequence {
   public:
    PulseSequence() = default;
    explicit PulseSequence(std::string gate) : gate_(std::move(gate)) {}

    const std::string& gate() const { return gate_; }
    void set_gate(std::string gate) { gate_ = std::move(gate); }
    const std::string& model() const { return model_; }
    void set_model(std::string model) { model_ = std::move(model); }

    const std::vector<Pulse>& pulses() const { return pulses_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<std::string>& notes() const { return notes_; }
    size_t pulse_count() const { return pulses_.size(); }
    bool empty() const { return pulses_.empty(); }

    void append(const Pulse& p) { pulses_.push_back(p); }
    /// Appends `other` and, when `segment` is non-empty, records it as a named segment.
    void append(const PulseSequence& other, const std::string& segment = "");
    void add_note(std::string note) { notes_.push_back(std::move(note)); }
    void add_segment(Segment s) { segments_.push_back(std::move(s)); }

    /// Time-reversed sequence with negated durations; compiles to U^dagger.
    PulseSequence inverse() const;
    /// Sum of |t| over exchange and field pulses, |angle| over ideal-Z pulses.
    double total_duration() const;

    /// Boundaries between (and around) top-level segments: 0, every segment edge, size.
    std::vector<size_t> segment_boundaries() const;

   private:
    std::string gate_;
    std::string model_;
    std::vector<Pulse> pulses_;
    std::vector<Segment> segments_;
    std::vector<std::string> notes_;
};

/// The unitary of one pulse on the full register.
void apply_pulse(const Pulse& pulse, const Device& device, StateVector& state);
void apply_sequence(const PulseSequence& seq, const Device& device, StateVector& state);
/// Dense compiled unitary over the device's register; last pulse leftmost.
Matrix compile(const PulseSequence& seq, const Device& device);
Matrix compile_range(const PulseSequence& seq, const Device& device, size_t begin, size_t end);

/// Line format: header lines "model <m>", "gate <g>", "qubits <n>", then one
/// pulse per line as "EX i j t", "GF t" or "ZR q angle".  '#' starts a comment.
void write_sequence(std::ostream& out, const PulseSequence& seq, int n_qubits);
std::string to_text(const PulseSequence& seq, int n_qubits);
PulseSequence read_sequence(std::istream& in);

// Logical generators of 2QUC blocks, embedded in an n-qubit register.
namespace generators {
/// (X_i X_j + Y_i Y_j) / 2.
Matrix xbar(int i, int j, int n);
/// (Y_i X_j - X_i Y_j) / 2, the su(2) completion: acts as sigma_y on span{|01>,|10>}.
Matrix ybar(int i, int j, int n);
/// (Z_i - Z_j) / 2.
Matrix zbar(int i, int j, int n);
/// Z_i Z_j.
Matrix zz(int i, int j, int n);
}  // namespace generators

}  // namespace exft
