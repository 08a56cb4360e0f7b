#include "exft/hamiltonians.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace exft {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Heisenberg:
            return "heisenberg";
        case ModelKind::XXZ:
            return "xxz";
        case ModelKind::XY:
            return "xy";
    }
    return "?";
}

ModelKind parse_model(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "heisenberg") return ModelKind::Heisenberg;
    if (lower == "xxz") return ModelKind::XXZ;
    if (lower == "xy") return ModelKind::XY;
    throw std::invalid_argument("unknown exchange model: " + std::string(name));
}

void validate_coupling_for_model(ModelKind kind, double J, double Jz) {
    switch (kind) {
        case ModelKind::Heisenberg:
            if (J != Jz) throw std::invalid_argument("Heisenberg coupling requires Jz == J");
            break;
        case ModelKind::XY:
            if (Jz != 0.0) throw std::invalid_argument("XY coupling requires Jz == 0");
            break;
        case ModelKind::XXZ:
            if (Jz == 0.0 || J == Jz) throw std::invalid_argument("XXZ coupling requires Jz != 0 and J != Jz");
            break;
    }
}

CouplingGraph::CouplingGraph(int n_qubits, bool allow_long_range)
    : n_(n_qubits), allow_long_range_(allow_long_range) {
    check_register_size(n_qubits);
}

void CouplingGraph::add(ModelKind kind, int i, int j, double J, double Jz) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n_ || i == j) {
        throw std::out_of_range("coupling (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (!allow_long_range_ && j - i > kDefaultMaxRange) {
        throw std::invalid_argument("coupling (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") exceeds |i-j| <= 2; enable long-range couplings to allow it");
    }
    validate_coupling_for_model(kind, J, Jz);
    if (find(i, j)) {
        throw std::invalid_argument("duplicate coupling");
    }
    couplings_.push_back({i, j, J, Jz});
}

std::optional<Coupling> CouplingGraph::find(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& c : couplings_) {
        if (c.i == i && c.j == j) return c;
    }
    return std::nullopt;
}

const Coupling& CouplingGraph::at(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& c : couplings_) {
        if (c.i == i && c.j == j) return c;
    }
    throw std::invalid_argument("no coupling between qubits " + std::to_string(i) + " and " + std::to_string(j) +
                                (allow_long_range_ ? "" : " (long-range couplings are disabled)"));
}

GlobalField::GlobalField(std::vector<double> omegas) : omegas_(std::move(omegas)) {
    check_register_size(static_cast<int>(omegas_.size()));
    for (size_t a = 0; a < omegas_.size(); ++a) {
        if (!std::isfinite(omegas_[a])) throw std::invalid_argument("non-finite field frequency");
        for (size_t b = a + 1; b < omegas_.size(); ++b) {
            if (omegas_[a] == omegas_[b]) {
                throw std::invalid_argument("degenerate global field: omega_" + std::to_string(a + 1) +
                                            " == omega_" + std::to_string(b + 1));
            }
        }
    }
}

std::vector<double> default_omegas(int n_qubits) {
    std::vector<double> w;
    for (int q = 1; q <= n_qubits; ++q) w.push_back(1.0 + 0.37 * (q - 1));
    return w;
}

Device Device::uniform(ModelKind model, int n_qubits, const Params& params) {
    double jz = 0.0;
    if (params.Jz) {
        jz = *params.Jz;
    } else if (model == ModelKind::Heisenberg) {
        jz = params.J;
    } else if (model == ModelKind::XXZ) {
        jz = 0.6 * params.J;
    }
    CouplingGraph graph(n_qubits, params.allow_long_range);
    for (int i = 1; i <= n_qubits; ++i) {
        for (int j = i + 1; j <= n_qubits; ++j) {
            if (params.allow_long_range || j - i <= CouplingGraph::kDefaultMaxRange) {
                graph.add(model, i, j, params.J, jz);
            }
        }
    }
    GlobalField field(params.omegas.empty() ? default_omegas(n_qubits) : params.omegas);
    if (field.num_qubits() != n_qubits) {
        throw std::invalid_argument("global field must list one frequency per qubit");
    }
    return Device{model, std::move(graph), std::move(field)};
}

Device Device::uniform(ModelKind model, int n_qubits) { return uniform(model, n_qubits, Params{}); }

Eigen::Matrix4cd exchange_local(double J, double Jz) {
    // Basis |00>,|01>,|10>,|11>: ZZ diagonal (1,-1,-1,1); XX+YY = 2(|01><10| + h.c.).
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(0, 0) = Jz;
    h(1, 1) = -Jz;
    h(2, 2) = -Jz;
    h(3, 3) = Jz;
    h(1, 2) = 2.0 * J;
    h(2, 1) = 2.0 * J;
    return h;
}

Eigen::Matrix4cd exchange_propagator(double J, double Jz, double t) {
    // |00>, |11> only pick up the Ising phase; the {|01>,|10>} block is -Jz + 2J sigma_x.
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    const cplx ising = std::polar(1.0, -t * Jz);
    u(0, 0) = ising;
    u(3, 3) = ising;
    const cplx outer = std::polar(1.0, t * Jz);
    const double c = std::cos(2.0 * J * t);
    const double s = std::sin(2.0 * J * t);
    u(1, 1) = outer * c;
    u(2, 2) = outer * c;
    u(1, 2) = outer * cplx(0.0, -s);
    u(2, 1) = outer * cplx(0.0, -s);
    return u;
}

HermitianOperator build_hij(int i, int j, double J, double Jz, int n) {
    if (i >= j) {
        throw std::invalid_argument("build_hij requires i < j");
    }
    if (i < 1 || j > n) {
        throw std::out_of_range("build_hij: index out of range");
    }
    const Matrix local = exchange_local(J, Jz);
    return HermitianOperator(n, kron_embed(local, {i, j}, n));
}

HermitianOperator build_h0(const GlobalField& field) {
    const int n = field.num_qubits();
    const auto dim = Eigen::Index{1} << n;
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int q = 1; q <= n; ++q) {
            e += 0.5 * field.omega(q) * (qubit_is_one(static_cast<uint64_t>(idx), q, n) ? -1.0 : 1.0);
        }
        h(idx, idx) = e;
    }
    return HermitianOperator(n, std::move(h));
}

}  // namespace exft
