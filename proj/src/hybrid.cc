#include "exft/hybrid.h"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace exft {

namespace {

StateVector fix_phase(StateVector s) {
    Eigen::Index k = 0;
    s.amplitudes().cwiseAbs().maxCoeff(&k);
    const cplx a = s.amplitudes()[k];
    s.amplitudes() *= std::conj(a) / std::abs(a);
    return s;
}

// Logical Paulis of length n ordered by weight, then support, then letters with Z < X < Y.
std::vector<PauliString> ordered_paulis(int n) {
    std::vector<PauliString> all;
    const uint64_t count = uint64_t{1} << (2 * n);
    all.reserve(count);
    for (uint64_t code = 0; code < count; ++code) {
        PauliString p(n);
        for (int q = 1; q <= n; ++q) p.set(q, "IXYZ"[(code >> (2 * (n - q))) & 3]);
        all.push_back(p);
    }
    std::stable_sort(all.begin(), all.end(), [](const PauliString& a, const PauliString& b) {
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        const auto sa = a.support(), sb = b.support();
        if (sa != sb) return sa < sb;
        auto rank = [](const PauliString& p) {
            std::string r = p.letters();
            for (char& c : r) c = c == 'Z' ? '1' : c == 'X' ? '2' : c == 'Y' ? '3' : '0';
            return r;
        };
        return rank(a) < rank(b);
    });
    return all;
}

}  // namespace

BaseCode make_base_code(std::string name, const std::vector<PauliString>& generators, const PauliString& logical_x,
                        const PauliString& logical_z) {
    const int n = logical_x.num_qubits();
    if (n < 1 || logical_z.num_qubits() != n) throw std::invalid_argument("logical operators must share a length");
    for (size_t a = 0; a < generators.size(); ++a) {
        if (generators[a].num_qubits() != n) {
            throw std::invalid_argument("generator " + generators[a].to_string() + " has the wrong length");
        }
        for (size_t b = a + 1; b < generators.size(); ++b) {
            if (!generators[a].commutes_with(generators[b])) {
                throw std::invalid_argument("generators " + generators[a].to_string() + " and " +
                                            generators[b].to_string() + " do not commute");
            }
        }
        if (!generators[a].commutes_with(logical_x) || !generators[a].commutes_with(logical_z)) {
            throw std::invalid_argument("logical operators must commute with every generator");
        }
    }
    if (logical_x.commutes_with(logical_z)) throw std::invalid_argument("logical X and Z must anticommute");
    return BaseCode{std::move(name), n, generators, logical_x, logical_z};
}

namespace presets {

BaseCode phase3() {
    return make_base_code("phase3", parse_pauli_list("XXI, IXX"), PauliString::parse("ZZZ"),
                          PauliString::parse("XXX"));
}

BaseCode perfect5() {
    return make_base_code("perfect5", parse_pauli_list("XZZXI, IXZZX, XIXZZ, ZXIXZ"), PauliString::parse("XXXXX"),
                          PauliString::parse("ZZZZZ"));
}

BaseCode trivial() { return make_base_code("trivial", {}, PauliString::parse("X"), PauliString::parse("Z")); }

}  // namespace presets

BaseCode preset_by_name(const std::string& name) {
    if (name == "phase3") return presets::phase3();
    if (name == "perfect5") return presets::perfect5();
    if (name == "trivial") return presets::trivial();
    throw std::invalid_argument("unknown code '" + name + "' (expected phase3, perfect5 or trivial)");
}

PauliString expand_letter(char letter, int block, int n_blocks) {
    PauliString p(2 * n_blocks);
    const int a = 2 * block - 1, b = 2 * block;
    switch (letter) {
        case 'I': break;
        case 'X': p.set(a, 'X'); p.set(b, 'X'); break;
        case 'Y': p.set(a, 'Y'); p.set(b, 'X'); break;
        case 'Z': p.set(a, 'Z'); break;
        default: throw std::invalid_argument(std::string("bad Pauli letter '") + letter + "'");
    }
    return p;
}

PauliString expand(const PauliString& logical) {
    const int n = logical.num_qubits();
    PauliString p(2 * n);
    for (int blk = 1; blk <= n; ++blk) p = p * expand_letter(logical.letter(blk), blk, n);
    p.set_phase_power(logical.phase_power());
    return p;
}

StateVector HybridCode::codeword(cplx alpha, cplx beta) const {
    StateVector s(num_qubits(), Vector(alpha * zero.amplitudes() + beta * one.amplitudes()));
    s.normalize();
    return s;
}

HybridCode build_hybrid(const BaseCode& base) {
    HybridCode code;
    code.base = base;
    code.layout = BlockLayout(base.n);
    for (const auto& g : base.generators) code.generators.push_back(expand(g));
    code.logical_x = expand(base.logical_x);
    code.logical_z = expand(base.logical_z);

    const Eigen::Index d = Eigen::Index{1} << base.n;
    Matrix proj = Matrix::Identity(d, d);
    for (const auto& g : base.generators) proj = proj * (Matrix::Identity(d, d) + g.matrix()) * 0.5;
    proj = proj * (Matrix::Identity(d, d) + base.logical_z.matrix()) * 0.5;
    std::optional<StateVector> zero;
    for (Eigen::Index k = 0; k < d && !zero; ++k) {
        Vector v = proj.col(k);
        if (v.norm() > 1e-6) zero = StateVector(base.n, Vector(v / v.norm()));
    }
    if (!zero) throw std::logic_error("stabilizer has no logical zero state");
    code.base_zero = fix_phase(*zero);
    code.base_one = code.base_zero;
    base.logical_x.apply(code.base_one);
    code.zero = encode(code.base_zero, code.layout);
    code.one = encode(code.base_one, code.layout);

    for (const auto& e : ordered_paulis(base.n)) {
        code.decoder.try_emplace(logical_syndrome(e, base), e);
    }
    return code;
}

std::string to_string(ErrorVerdict v) {
    switch (v) {
        case ErrorVerdict::Identity: return "identity";
        case ErrorVerdict::Logical: return "logical";
        case ErrorVerdict::Leakage: return "leakage";
        case ErrorVerdict::Mixed: return "mixed";
    }
    return "?";
}

std::string ErrorClassification::describe() const {
    constexpr const char* sign[4] = {"+", "+i", "-", "-i"};
    switch (verdict) {
        case ErrorVerdict::Logical:
        case ErrorVerdict::Identity:
            return fmt::format("{} = {}{}bar", pauli, sign[phase_power], logical);
        case ErrorVerdict::Leakage: return pauli + ": leakage";
        case ErrorVerdict::Mixed: return pauli + ": mixed";
    }
    return pauli;
}

ErrorClassification classify_block_error(const std::string& two_letters) {
    if (two_letters.size() != 2) throw std::invalid_argument("block error must have two letters");
    const Matrix e = PauliString::parse(two_letters).matrix();
    constexpr int code[2] = {static_cast<int>(kZeroL), static_cast<int>(kOneL)};
    constexpr int leak[2] = {0b00, 0b11};
    Eigen::Matrix2cd restricted, escaped;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            restricted(r, c) = e(code[r], code[c]);
            escaped(r, c) = e(leak[r], code[c]);
        }
    }
    ErrorClassification out;
    out.pauli = two_letters;
    const double tol = kTol.op_equal;
    if (escaped.cwiseAbs().maxCoeff() < tol) {
        constexpr cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (char l : std::string("IXYZ")) {
            const Matrix s = pauli_matrix::from_letter(l);
            for (int k = 0; k < 4; ++k) {
                if ((restricted - powers[k] * s).cwiseAbs().maxCoeff() < tol) {
                    out.logical = l;
                    out.phase_power = k;
                    out.verdict = two_letters == "II" ? ErrorVerdict::Identity : ErrorVerdict::Logical;
                    return out;
                }
            }
        }
        out.verdict = ErrorVerdict::Mixed;
    } else if (restricted.cwiseAbs().maxCoeff() < tol) {
        out.verdict = ErrorVerdict::Leakage;
    } else {
        out.verdict = ErrorVerdict::Mixed;
    }
    return out;
}

std::vector<ErrorClassification> classify_all_block_errors() {
    std::vector<ErrorClassification> out;
    for (char a : std::string("IXYZ")) {
        for (char b : std::string("IXYZ")) out.push_back(classify_block_error(std::string{a, b}));
    }
    return out;
}

std::string to_string(const Syndrome& s) {
    std::string out;
    for (int b : s) out += static_cast<char>('0' + b);
    return out;
}

Syndrome logical_syndrome(const PauliString& logical_error, const BaseCode& base) {
    Syndrome s;
    for (const auto& g : base.generators) s.push_back(g.commutes_with(logical_error) ? 0 : 1);
    return s;
}

Syndrome extract_syndrome(StateVector& state, const HybridCode& code, Rng* rng) {
    if (state.num_qubits() != code.num_qubits()) throw std::invalid_argument("state size does not match the code");
    const double leak = leakage_weight(state, code.layout);
    if (leak > kTol.leakage) {
        throw LeakagePrecondition(fmt::format("syndrome extraction on a leaked state (leakage weight {:.3g})", leak));
    }
    Syndrome s;
    for (const auto& g : code.generators) {
        StateVector gs = state;
        g.apply(gs);
        const double expectation = state.inner(gs).real();
        const double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
        int bit = 0;
        if (rng) {
            bit = uniform01(*rng) < p_plus ? 0 : 1;
        } else if (p_plus > 1.0 - kTol.fidelity) {
            bit = 0;
        } else if (p_plus < kTol.fidelity) {
            bit = 1;
        } else {
            throw std::domain_error("state is not an eigenstate of " + g.to_string() + " and no rng was given");
        }
        const double sign = bit == 0 ? 1.0 : -1.0;
        state.amplitudes() = 0.5 * (state.amplitudes() + sign * gs.amplitudes());
        state.normalize();
        s.push_back(bit);
    }
    return s;
}

Correction decode_syndrome(const Syndrome& syndrome, const HybridCode& code) {
    Correction c;
    c.logical = PauliString(code.num_blocks());
    c.physical = PauliString(code.num_qubits());
    const auto it = code.decoder.find(syndrome);
    if (it == code.decoder.end()) return c;
    c.recognized = true;
    c.logical = it->second;
    c.physical = expand(it->second);
    return c;
}

Correction correct(StateVector& state, const Syndrome& syndrome, const HybridCode& code) {
    Correction c = decode_syndrome(syndrome, code);
    if (c.recognized) c.physical.apply(state);
    return c;
}

double fidelity(const StateVector& state, const StateVector& target) { return std::norm(target.inner(state)); }

std::vector<int> minimal_support(const Matrix& m, const Matrix& p, int n_qubits, double tol) {
    const double scale = std::max(1.0, m.norm());
    const Eigen::Index d2 = m.size();
    const Eigen::Map<const Vector> target(m.data(), d2);
    std::vector<int> all(n_qubits);
    std::iota(all.begin(), all.end(), 1);
    for (int k = 0; k <= n_qubits; ++k) {
        std::vector<bool> pick(n_qubits, false);
        std::fill(pick.begin(), pick.begin() + k, true);
        do {
            std::vector<int> subset;
            for (int q = 0; q < n_qubits; ++q) {
                if (pick[q]) subset.push_back(q + 1);
            }
            const Eigen::Index cols = Eigen::Index{1} << (2 * k);
            Matrix a(d2, cols);
            for (Eigen::Index code = 0; code < cols; ++code) {
                PauliString sigma(n_qubits);
                for (int s = 0; s < k; ++s) sigma.set(subset[s], "IXYZ"[(code >> (2 * s)) & 3]);
                const Matrix col = sigma.matrix() * p;
                a.col(code) = Eigen::Map<const Vector>(col.data(), d2);
            }
            const Vector x = a.colPivHouseholderQr().solve(target);
            if ((a * x - target).cwiseAbs().maxCoeff() < tol * scale) return subset;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return all;
}

PropagationResult propagate_fault(const PulseSequence& gate, const Device& device, const BlockLayout& layout,
                                  int qubit, char letter, int insertion) {
    const int n = layout.num_qubits();
    if (device.num_qubits() != n) throw std::invalid_argument("device and layout register sizes differ");
    if (insertion < 0 || static_cast<size_t>(insertion) > gate.pulse_count()) {
        throw std::out_of_range("insertion point outside the sequence");
    }
    const auto k = static_cast<size_t>(insertion);
    const Matrix before = compile_range(gate, device, 0, k);
    const Matrix after = compile_range(gate, device, k, gate.pulse_count());
    const Matrix fault = kron_embed(pauli_matrix::from_letter(letter), {qubit}, n);
    const Matrix ideal = after * before;
    const Matrix p = code_subspace(layout).projector();
    const Matrix m = after * fault * before * ideal.adjoint() * p;

    PropagationResult r;
    r.insertion = insertion;
    r.qubit = qubit;
    r.letter = letter;
    const auto bounds = gate.segment_boundaries();
    r.at_boundary = std::find(bounds.begin(), bounds.end(), k) != bounds.end();
    r.location = r.at_boundary ? "boundary" : "interior";
    if (!r.at_boundary) {
        for (const auto& s : gate.segments()) {
            if (s.begin < k && k < s.end) r.location = s.name;
        }
    }
    const double norm = m.norm();
    const Eigen::Index d = p.rows();
    r.leakage_fraction = ((Matrix::Identity(d, d) - p) * m).norm() / norm;
    for (int b = 1; b <= layout.num_blocks(); ++b) {
        if ((block_leakage_projector(layout, b) * m).norm() > 1e-9 * norm) r.leaked_blocks.push_back(b);
    }
    r.support = minimal_support(m, p, n);
    return r;
}

std::vector<PropagationResult> sweep_insertions(const PulseSequence& gate, const Device& device,
                                                const BlockLayout& layout, int qubit, char letter) {
    std::vector<PropagationResult> out;
    for (size_t k = 0; k <= gate.pulse_count(); ++k) {
        out.push_back(propagate_fault(gate, device, layout, qubit, letter, static_cast<int>(k)));
    }
    return out;
}

}  // namespace exft
