#pragma once

// Pauli strings with an i^k phase, stored as X/Z bit masks.

#include <cstdint>
#include <string>
#include <vector>

#include "exft/linalg.h"

namespace exft {

class PauliString {
   public:
    PauliString() = default;
    /// Identity on n qubits.
    explicit PauliString(int n);
    /// Letters over I, X, Y, Z (qubit 1 first), optionally prefixed by "+", "-", "i", "-i".
    static PauliString parse(const std::string& text);
    /// Single letter on qubit q of an n-qubit register.
    static PauliString single(int n, int q, char letter);

    int num_qubits() const { return n_; }
    char letter(int q) const;
    void set(int q, char letter);
    /// Phase as a power of i, in 0..3.
    int phase_power() const { return phase_; }
    cplx phase() const;
    void set_phase_power(int k) { phase_ = ((k % 4) + 4) % 4; }
    int weight() const;
    std::vector<int> support() const;
    bool is_identity() const { return x_ == 0 && z_ == 0; }

    PauliString operator*(const PauliString& rhs) const;
    bool commutes_with(const PauliString& other) const;
    bool operator==(const PauliString& other) const = default;

    /// Letters only, qubit 1 first.
    std::string letters() const;
    /// Letters with a sign prefix when the phase is not +1.
    std::string to_string() const;

    Matrix matrix() const;
    /// In-place action including the phase.
    void apply(StateVector& state) const;

   private:
    uint32_t mask(int q) const;
    int n_ = 0;
    uint32_t x_ = 0;
    uint32_t z_ = 0;
    int phase_ = 0;
};

/// Comma-separated list such as "XXI, IXX".
std::vector<PauliString> parse_pauli_list(const std::string& text);

}  // namespace exft
