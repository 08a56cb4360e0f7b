#pragma once

// Exchange Hamiltonians H_ij = J (X_i X_j + Y_i Y_j) + Jz Z_i Z_j and the
// global field H_0 = sum_i (omega_i / 2) Z_i.  Units: hbar = 1, energies and
// times dimensionless.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exft/linalg.h"

namespace exft {

enum class ModelKind { Heisenberg, XXZ, XY };

std::string to_string(ModelKind kind);
/// Accepts "heisenberg", "xxz", "xy" (case-insensitive).
ModelKind parse_model(std::string_view name);

struct Coupling {
    int i = 0;
    int j = 0;
    double J = 0.0;
    double Jz = 0.0;
};

/// Throws if (J, Jz) violates the model: Heisenberg needs Jz == J, XY needs
/// Jz == 0, XXZ needs Jz != 0 and J != Jz.
void validate_coupling_for_model(ModelKind kind, double J, double Jz);

class CouplingGraph {
   public:
    /// Couplings with |i-j| > max_range are rejected unless allow_long_range.
    static constexpr int kDefaultMaxRange = 2;

    CouplingGraph(int n_qubits, bool allow_long_range = false);

    void add(ModelKind kind, int i, int j, double J, double Jz);
    int num_qubits() const { return n_; }
    bool allow_long_range() const { return allow_long_range_; }
    const std::vector<Coupling>& couplings() const { return couplings_; }
    /// Order of (i, j) does not matter.
    std::optional<Coupling> find(int i, int j) const;
    const Coupling& at(int i, int j) const;

   private:
    int n_;
    bool allow_long_range_;
    std::vector<Coupling> couplings_;
};

class GlobalField {
   public:
    /// Rejects degenerate (repeated) frequencies.
    explicit GlobalField(std::vector<double> omegas);
    int num_qubits() const { return static_cast<int>(omegas_.size()); }
    const std::vector<double>& omegas() const { return omegas_; }
    double omega(int q) const { return omegas_.at(static_cast<size_t>(q - 1)); }
    /// Delta_ik = omega_i - omega_k.
    double delta(int i, int k) const { return omega(i) - omega(k); }

   private:
    std::vector<double> omegas_;
};

/// Everything a pulse needs to become a unitary.
struct Device {
    ModelKind model;
    CouplingGraph graph;
    GlobalField field;

    int num_qubits() const { return graph.num_qubits(); }

    struct Params {
        double J = 1.0;
        /// Unset: 0 for XY, J for Heisenberg, 0.6 J for XXZ.
        std::optional<double> Jz;
        /// Unset: omega_q = 1 + 0.37 (q - 1).
        std::vector<double> omegas;
        bool allow_long_range = false;
    };

    /// Uniform couplings between every pair in range (every pair when long range is allowed).
    static Device uniform(ModelKind model, int n_qubits, const Params& params);
    static Device uniform(ModelKind model, int n_qubits);
};

std::vector<double> default_omegas(int n_qubits);

HermitianOperator build_hij(int i, int j, double J, double Jz, int n);
HermitianOperator build_h0(const GlobalField& field);

/// The 4x4 block of H_ij on (i, j), i the more significant factor.
Eigen::Matrix4cd exchange_local(double J, double Jz);
/// e^{-it H_ij} as a 4x4 block.
Eigen::Matrix4cd exchange_propagator(double J, double Jz, double t);

}  // namespace exft
