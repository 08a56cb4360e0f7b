#pragma once

// Dense complex linear algebra for registers of at most 16 qubits.
//
// Basis-index convention: for the ket |q1 q2 ... qn>, qubit 1 is the most
// significant bit of the index, and |0> is the +1 eigenstate of Z.  Qubit
// indices in the public API are 1-based, matching the usual X_1, Z_2 notation.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace exft {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 16;

/// Every numeric threshold used by the library lives here.
struct Tolerances {
    double op_equal = 1e-10;
    double unitary = 1e-10;
    double hermitian = 1e-12;
    double norm = 1e-12;
    double leakage = 1e-9;
    double fidelity = 1e-9;
};

inline constexpr Tolerances kTol{};

/// Bit position (0 = least significant) of 1-based qubit `q` in an n-qubit index.
inline int bit_of(int q, int n) { return n - q; }

inline bool qubit_is_one(uint64_t index, int q, int n) { return (index >> bit_of(q, n)) & 1; }

void check_register_size(int n);

namespace pauli_matrix {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
/// 'I', 'X', 'Y' or 'Z'.
Matrix from_letter(char letter);
}  // namespace pauli_matrix

class StateVector {
   public:
    /// |0...0>.
    explicit StateVector(int n_qubits);
    StateVector(int n_qubits, uint64_t basis_index);
    StateVector(int n_qubits, Vector amplitudes);
    /// Ket from a bit string such as "0110" (qubit 1 first).
    static StateVector from_bits(const std::string& bits);

    int num_qubits() const { return n_; }
    size_t dim() const { return static_cast<size_t>(amps_.size()); }
    const Vector& amplitudes() const { return amps_; }
    Vector& amplitudes() { return amps_; }
    cplx operator[](uint64_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

    double norm() const { return amps_.norm(); }
    void normalize();
    cplx inner(const StateVector& other) const { return amps_.dot(other.amps_); }

    /// Applies a 2x2 operator to qubit q.
    void apply_1q(const Eigen::Matrix2cd& op, int q);
    /// Applies a 4x4 operator to (q1, q2), q1 being the more significant factor.
    void apply_2q(const Eigen::Matrix4cd& op, int q1, int q2);
    /// Applies a 2^k x 2^k operator to the listed qubits, targets[0] most significant.
    void apply_local(const Matrix& op, std::span<const int> targets);
    /// Multiplies each amplitude by phases[index].
    void apply_diagonal(std::span<const cplx> phases);
    void apply_pauli(char letter, int q);
    /// Dense operator on the full register.
    void apply(const Matrix& op);

   private:
    int n_;
    Vector amps_;
};

/// H = H^dagger within kTol.hermitian.
class HermitianOperator {
   public:
    HermitianOperator(int n_qubits, Matrix entries);
    int num_qubits() const { return n_; }
    const Matrix& matrix() const { return m_; }

   private:
    int n_;
    Matrix m_;
};

/// U^dagger U = I within kTol.unitary.
class UnitaryMatrix {
   public:
    UnitaryMatrix(int n_qubits, Matrix entries);
    static UnitaryMatrix identity(int n_qubits);
    int num_qubits() const { return n_; }
    const Matrix& matrix() const { return m_; }
    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

   private:
    int n_;
    Matrix m_;
};

/// Orthonormal column basis of a subspace of an n-qubit register.
class Subspace {
   public:
    Subspace(int n_qubits, Matrix basis);
    static Subspace from_states(std::span<const StateVector> states);
    int num_qubits() const { return n_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Matrix& basis() const { return basis_; }
    Matrix projector() const { return basis_ * basis_.adjoint(); }

   private:
    int n_;
    Matrix basis_;
};

Matrix kron(const Matrix& a, const Matrix& b);

/// `op` (dimension 2^|targets|) acting on the listed qubits, identity elsewhere.
/// targets[0] is the most significant factor of `op`.
Matrix kron_embed(const Matrix& op, std::span<const int> targets, int n);
Matrix kron_embed(const Matrix& op, std::initializer_list<int> targets, int n);

/// e^{-itH} via Hermitian eigendecomposition.
UnitaryMatrix expm_hermitian(const HermitianOperator& h, double t);
/// Same, for a matrix that is only checked for hermiticity.
Matrix expm_hermitian(const Matrix& h, double t);

struct PhaseComparison {
    bool equal = false;
    double phase = 0.0;
    double max_deviation = 0.0;
};

/// Finds phi with ||A - e^{i phi} B||_max <= tol; phi is read off the
/// largest-magnitude entry of B^dagger A.
PhaseComparison equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = kTol.op_equal);

/// |Tr(P V^dagger U P)| / dim(S).  Throws if S is not invariant under V.
double restricted_fidelity(const Matrix& u, const Matrix& v_target, const Subspace& s);

double max_abs(const Matrix& m);
bool is_unitary(const Matrix& m, double tol = kTol.unitary);
bool is_hermitian(const Matrix& m, double tol = kTol.hermitian);

}  // namespace exft
