#include "exft/pauli.h"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace exft {

PauliString::PauliString(int n) : n_(n) {
    if (n < 1 || n > 32) throw std::invalid_argument("Pauli string length must be in 1..32");
}

uint32_t PauliString::mask(int q) const {
    if (q < 1 || q > n_) throw std::out_of_range("qubit " + std::to_string(q) + " out of range");
    return uint32_t{1} << (q - 1);
}

PauliString PauliString::parse(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s += c;
    }
    int phase = 0;
    size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') phase += 2;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        phase += 1;
        ++pos;
    }
    const std::string letters = s.substr(pos);
    if (letters.empty()) throw std::invalid_argument("empty Pauli string '" + text + "'");
    PauliString p(static_cast<int>(letters.size()));
    for (size_t q = 0; q < letters.size(); ++q) p.set(static_cast<int>(q) + 1, letters[q]);
    p.set_phase_power(phase);
    return p;
}

PauliString PauliString::single(int n, int q, char letter) {
    PauliString p(n);
    p.set(q, letter);
    return p;
}

char PauliString::letter(int q) const {
    const uint32_t m = mask(q);
    const bool x = x_ & m, z = z_ & m;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliString::set(int q, char letter) {
    const uint32_t m = mask(q);
    x_ &= ~m;
    z_ &= ~m;
    switch (letter) {
        case 'I': break;
        case 'X': x_ |= m; break;
        case 'Y': x_ |= m; z_ |= m; break;
        case 'Z': z_ |= m; break;
        default: throw std::invalid_argument(std::string("bad Pauli letter '") + letter + "'");
    }
}

cplx PauliString::phase() const {
    constexpr cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_];
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int q = 1; q <= n_; ++q) {
        if ((x_ | z_) & mask(q)) out.push_back(q);
    }
    return out;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("Pauli strings of different length");
    PauliString out(n_);
    out.x_ = x_ ^ rhs.x_;
    out.z_ = z_ ^ rhs.z_;
    // Per qubit, sigma_a sigma_b = i^{e} sigma_c; accumulate e mod 4.
    int e = phase_ + rhs.phase_;
    for (int q = 1; q <= n_; ++q) {
        const char a = letter(q), b = rhs.letter(q);
        if (a == 'I' || b == 'I' || a == b) continue;
        const bool cyclic = (a == 'X' && b == 'Y') || (a == 'Y' && b == 'Z') || (a == 'Z' && b == 'X');
        e += cyclic ? 1 : 3;
    }
    out.set_phase_power(e);
    return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("Pauli strings of different length");
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

std::string PauliString::letters() const {
    std::string s;
    for (int q = 1; q <= n_; ++q) s += letter(q);
    return s;
}

std::string PauliString::to_string() const {
    constexpr const char* prefix[4] = {"", "i", "-", "-i"};
    return prefix[phase_] + letters();
}

Matrix PauliString::matrix() const {
    Matrix m = pauli_matrix::from_letter(letter(1));
    for (int q = 2; q <= n_; ++q) m = kron(m, pauli_matrix::from_letter(letter(q)));
    return phase() * m;
}

void PauliString::apply(StateVector& state) const {
    if (state.num_qubits() != n_) throw std::invalid_argument("Pauli string and state sizes differ");
    for (int q = 1; q <= n_; ++q) {
        const char l = letter(q);
        if (l != 'I') state.apply_pauli(l, q);
    }
    if (phase_ != 0) state.amplitudes() *= phase();
}

std::vector<PauliString> parse_pauli_list(const std::string& text) {
    std::vector<PauliString> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(PauliString::parse(item));
    }
    return out;
}

}  // namespace exft
