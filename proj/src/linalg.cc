#include "exft/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace exft {

void check_register_size(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("register size must be in 1.." + std::to_string(kMaxQubits) + ", got " +
                                    std::to_string(n));
    }
}

namespace pauli_matrix {

Matrix I() { return Matrix::Identity(2, 2); }

Matrix X() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix Y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Matrix Z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix from_letter(char letter) {
    switch (letter) {
        case 'I':
            return I();
        case 'X':
            return X();
        case 'Y':
            return Y();
        case 'Z':
            return Z();
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + letter);
}

}  // namespace pauli_matrix

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits) : StateVector(n_qubits, 0) {}

StateVector::StateVector(int n_qubits, uint64_t basis_index) : n_(n_qubits) {
    check_register_size(n_qubits);
    amps_ = Vector::Zero(Eigen::Index{1} << n_qubits);
    if (basis_index >= static_cast<uint64_t>(amps_.size())) {
        throw std::out_of_range("basis index out of range");
    }
    amps_[static_cast<Eigen::Index>(basis_index)] = 1.0;
}

StateVector::StateVector(int n_qubits, Vector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    check_register_size(n_qubits);
    if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
    }
}

StateVector StateVector::from_bits(const std::string& bits) {
    uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain 0 and 1: " + bits);
        }
        index = (index << 1) | static_cast<uint64_t>(c == '1');
    }
    return StateVector(static_cast<int>(bits.size()), index);
}

void StateVector::normalize() {
    double nrm = norm();
    if (nrm == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    amps_ /= nrm;
}

void StateVector::apply_1q(const Eigen::Matrix2cd& op, int q) {
    if (q < 1 || q > n_) {
        throw std::out_of_range("qubit index out of range");
    }
    const uint64_t stride = uint64_t{1} << bit_of(q, n_);
    const uint64_t size = dim();
    for (uint64_t base = 0; base < size; base += 2 * stride) {
        for (uint64_t off = 0; off < stride; ++off) {
            const auto i0 = static_cast<Eigen::Index>(base + off);
            const auto i1 = static_cast<Eigen::Index>(base + off + stride);
            const cplx a0 = amps_[i0];
            const cplx a1 = amps_[i1];
            amps_[i0] = op(0, 0) * a0 + op(0, 1) * a1;
            amps_[i1] = op(1, 0) * a0 + op(1, 1) * a1;
        }
    }
}

void StateVector::apply_2q(const Eigen::Matrix4cd& op, int q1, int q2) {
    if (q1 < 1 || q1 > n_ || q2 < 1 || q2 > n_ || q1 == q2) {
        throw std::out_of_range("two-qubit operator needs distinct in-range qubits");
    }
    const uint64_t m1 = uint64_t{1} << bit_of(q1, n_);
    const uint64_t m2 = uint64_t{1} << bit_of(q2, n_);
    const uint64_t size = dim();
    for (uint64_t i = 0; i < size; ++i) {
        if (i & (m1 | m2)) {
            continue;
        }
        const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i | m2),
                                     static_cast<Eigen::Index>(i | m1), static_cast<Eigen::Index>(i | m1 | m2)};
        Eigen::Vector4cd in;
        for (int k = 0; k < 4; ++k) in[k] = amps_[idx[k]];
        const Eigen::Vector4cd out = op * in;
        for (int k = 0; k < 4; ++k) amps_[idx[k]] = out[k];
    }
}

void StateVector::apply_local(const Matrix& op, std::span<const int> targets) {
    const int k = static_cast<int>(targets.size());
    if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
        throw std::invalid_argument("local operator dimension does not match the target count");
    }
    std::vector<uint64_t> masks;
    uint64_t all = 0;
    for (int q : targets) {
        if (q < 1 || q > n_) throw std::out_of_range("target qubit out of range");
        const uint64_t m = uint64_t{1} << bit_of(q, n_);
        if (all & m) throw std::invalid_argument("duplicate target qubit");
        all |= m;
        masks.push_back(m);
    }
    const Eigen::Index local = op.rows();
    std::vector<Eigen::Index> idx(static_cast<size_t>(local));
    Vector in(local);
    for (uint64_t i = 0; i < dim(); ++i) {
        if (i & all) continue;
        for (Eigen::Index c = 0; c < local; ++c) {
            uint64_t full = i;
            for (int t = 0; t < k; ++t) {
                if ((c >> (k - 1 - t)) & 1) full |= masks[static_cast<size_t>(t)];
            }
            idx[static_cast<size_t>(c)] = static_cast<Eigen::Index>(full);
            in[c] = amps_[idx[static_cast<size_t>(c)]];
        }
        const Vector out = op * in;
        for (Eigen::Index c = 0; c < local; ++c) amps_[idx[static_cast<size_t>(c)]] = out[c];
    }
}

void StateVector::apply_diagonal(std::span<const cplx> phases) {
    if (phases.size() != dim()) {
        throw std::invalid_argument("diagonal length mismatch");
    }
    for (size_t i = 0; i < phases.size(); ++i) {
        amps_[static_cast<Eigen::Index>(i)] *= phases[i];
    }
}

void StateVector::apply_pauli(char letter, int q) {
    if (letter == 'I') {
        return;
    }
    Eigen::Matrix2cd m = pauli_matrix::from_letter(letter);
    apply_1q(m, q);
}

void StateVector::apply(const Matrix& op) {
    if (op.rows() != amps_.size() || op.cols() != amps_.size()) {
        throw std::invalid_argument("operator dimension mismatch");
    }
    amps_ = op * amps_;
}

// ---------------------------------------------------------------------------
// Operators

HermitianOperator::HermitianOperator(int n_qubits, Matrix entries) : n_(n_qubits), m_(std::move(entries)) {
    check_register_size(n_qubits);
    if (m_.rows() != (Eigen::Index{1} << n_) || m_.cols() != m_.rows()) {
        throw std::invalid_argument("operator dimension must be 2^n_qubits");
    }
    if (!is_hermitian(m_)) {
        throw std::invalid_argument("operator is not Hermitian");
    }
}

UnitaryMatrix::UnitaryMatrix(int n_qubits, Matrix entries) : n_(n_qubits), m_(std::move(entries)) {
    check_register_size(n_qubits);
    if (m_.rows() != (Eigen::Index{1} << n_) || m_.cols() != m_.rows()) {
        throw std::invalid_argument("operator dimension must be 2^n_qubits");
    }
    if (!is_unitary(m_)) {
        throw std::invalid_argument("operator is not unitary");
    }
}

UnitaryMatrix UnitaryMatrix::identity(int n_qubits) {
    check_register_size(n_qubits);
    return UnitaryMatrix(n_qubits, Matrix::Identity(Eigen::Index{1} << n_qubits, Eigen::Index{1} << n_qubits));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(n_, m_.adjoint()); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
    if (rhs.n_ != n_) {
        throw std::invalid_argument("register size mismatch");
    }
    return UnitaryMatrix(n_, m_ * rhs.m_);
}

Subspace::Subspace(int n_qubits, Matrix basis) : n_(n_qubits), basis_(std::move(basis)) {
    check_register_size(n_qubits);
    if (basis_.rows() != (Eigen::Index{1} << n_)) {
        throw std::invalid_argument("subspace basis vectors must have length 2^n_qubits");
    }
    const Matrix gram = basis_.adjoint() * basis_;
    if (max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > kTol.norm) {
        throw std::invalid_argument("subspace basis is not orthonormal");
    }
}

Subspace Subspace::from_states(std::span<const StateVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("empty subspace basis");
    }
    const int n = states.front().num_qubits();
    Matrix b(static_cast<Eigen::Index>(states.front().dim()), static_cast<Eigen::Index>(states.size()));
    for (size_t k = 0; k < states.size(); ++k) {
        b.col(static_cast<Eigen::Index>(k)) = states[k].amplitudes();
    }
    return Subspace(n, std::move(b));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

Matrix kron_embed(const Matrix& op, std::span<const int> targets, int n) {
    check_register_size(n);
    const int k = static_cast<int>(targets.size());
    if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
        throw std::invalid_argument("operator dimension must be 2^|targets|");
    }
    for (int a = 0; a < k; ++a) {
        if (targets[a] < 1 || targets[a] > n) {
            throw std::out_of_range("target qubit " + std::to_string(targets[a]) + " outside 1.." +
                                    std::to_string(n));
        }
        for (int b = a + 1; b < k; ++b) {
            if (targets[a] == targets[b]) {
                throw std::invalid_argument("duplicate target qubit " + std::to_string(targets[a]));
            }
        }
    }

    const uint64_t dim = uint64_t{1} << n;
    uint64_t target_mask = 0;
    for (int t : targets) target_mask |= uint64_t{1} << bit_of(t, n);

    // Local index of a full basis index: bits of the targets, targets[0] most significant.
    auto local = [&](uint64_t idx) {
        uint64_t l = 0;
        for (int t : targets) l = (l << 1) | ((idx >> bit_of(t, n)) & 1);
        return l;
    };
    auto scatter = [&](uint64_t rest, uint64_t l) {
        uint64_t idx = rest;
        for (int a = k - 1; a >= 0; --a) {
            if (l & 1) idx |= uint64_t{1} << bit_of(targets[a], n);
            l >>= 1;
        }
        return idx;
    };

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (uint64_t col = 0; col < dim; ++col) {
        const uint64_t rest = col & ~target_mask;
        const auto lc = static_cast<Eigen::Index>(local(col));
        for (Eigen::Index lr = 0; lr < op.rows(); ++lr) {
            const cplx v = op(lr, lc);
            if (v != cplx(0.0)) {
                out(static_cast<Eigen::Index>(scatter(rest, static_cast<uint64_t>(lr))), static_cast<Eigen::Index>(col)) = v;
            }
        }
    }
    return out;
}

Matrix kron_embed(const Matrix& op, std::initializer_list<int> targets, int n) {
    return kron_embed(op, std::span<const int>(targets.begin(), targets.size()), n);
}

Matrix expm_hermitian(const Matrix& h, double t) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("expm_hermitian: operator is not Hermitian");
    }
    // Symmetrize so the solver sees an exactly self-adjoint input.
    const Matrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::VectorXd& w = es.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases[i] = std::polar(1.0, -t * w[i]);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryMatrix expm_hermitian(const HermitianOperator& h, double t) {
    return UnitaryMatrix(h.num_qubits(), expm_hermitian(h.matrix(), t));
}

PhaseComparison equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("equal_up_to_phase: dimension mismatch");
    }
    PhaseComparison result;
    const Matrix overlap = b.adjoint() * a;
    Eigen::Index r = 0, c = 0;
    overlap.cwiseAbs().maxCoeff(&r, &c);
    const cplx z = overlap(r, c);
    if (std::abs(z) == 0.0) {
        result.max_deviation = max_abs(a - b);
        return result;
    }
    result.phase = std::arg(z);
    result.max_deviation = max_abs(a - std::polar(1.0, result.phase) * b);
    result.equal = result.max_deviation <= tol;
    return result;
}

double restricted_fidelity(const Matrix& u, const Matrix& v_target, const Subspace& s) {
    const Matrix& basis = s.basis();
    if (u.rows() != basis.rows() || v_target.rows() != basis.rows()) {
        throw std::invalid_argument("restricted_fidelity: dimension mismatch");
    }
    const Matrix p = s.projector();
    const Matrix v_on_s = v_target * basis;
    if (max_abs(p * v_on_s - v_on_s) > kTol.op_equal) {
        throw std::invalid_argument("restricted_fidelity: subspace is not invariant under the target");
    }
    const cplx tr = (basis.adjoint() * v_target.adjoint() * u * basis).trace();
    return std::abs(tr) / static_cast<double>(s.dim());
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol;
}

}  // namespace exft
