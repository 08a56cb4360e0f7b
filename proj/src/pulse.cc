#include "exft/pulse.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace exft {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<cplx> field_phases(const GlobalField& field, double t) {
    const int n = field.num_qubits();
    const uint64_t dim = uint64_t{1} << n;
    std::vector<cplx> phases(dim);
    for (uint64_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (int q = 1; q <= n; ++q) {
            e += 0.5 * field.omega(q) * (qubit_is_one(idx, q, n) ? -1.0 : 1.0);
        }
        phases[idx] = std::polar(1.0, -t * e);
    }
    return phases;
}

}  // namespace

std::vector<int> pulse_support(const Pulse& pulse, int n_qubits) {
    return std::visit(overloaded{
                          [](const ExchangePulse& p) { return std::vector<int>{p.i, p.j}; },
                          [n_qubits](const FieldPulse&) {
                              std::vector<int> all;
                              for (int q = 1; q <= n_qubits; ++q) all.push_back(q);
                              return all;
                          },
                          [](const IdealZPulse& p) { return std::vector<int>{p.q}; },
                      },
                      pulse);
}

void PulseSequence::append(const PulseSequence& other, const std::string& segment) {
    const size_t offset = pulses_.size();
    pulses_.insert(pulses_.end(), other.pulses_.begin(), other.pulses_.end());
    if (!segment.empty()) {
        segments_.push_back({segment, offset, pulses_.size()});
    }
    for (const auto& note : other.notes_) notes_.push_back(note);
}

PulseSequence PulseSequence::inverse() const {
    PulseSequence inv(gate_.empty() ? std::string{} : gate_ + "^-1");
    inv.model_ = model_;
    for (auto it = pulses_.rbegin(); it != pulses_.rend(); ++it) {
        inv.pulses_.push_back(std::visit(overloaded{
                                             [](ExchangePulse p) -> Pulse {
                                                 p.t = -p.t;
                                                 return p;
                                             },
                                             [](FieldPulse p) -> Pulse {
                                                 p.t = -p.t;
                                                 return p;
                                             },
                                             [](IdealZPulse p) -> Pulse {
                                                 p.angle = -p.angle;
                                                 return p;
                                             },
                                         },
                                         *it));
    }
    inv.notes_ = notes_;
    return inv;
}

double PulseSequence::total_duration() const {
    double total = 0.0;
    for (const auto& p : pulses_) {
        total += std::visit(overloaded{
                                [](const ExchangePulse& e) { return std::abs(e.t); },
                                [](const FieldPulse& f) { return std::abs(f.t); },
                                [](const IdealZPulse& z) { return std::abs(z.angle); },
                            },
                            p);
    }
    return total;
}

std::vector<size_t> PulseSequence::segment_boundaries() const {
    std::vector<size_t> b{0};
    for (const auto& s : segments_) {
        if (b.back() != s.begin) b.push_back(s.begin);
        if (b.back() != s.end) b.push_back(s.end);
    }
    if (b.back() != pulses_.size()) b.push_back(pulses_.size());
    return b;
}

void apply_pulse(const Pulse& pulse, const Device& device, StateVector& state) {
    if (state.num_qubits() != device.num_qubits()) {
        throw std::invalid_argument("state and device register sizes differ");
    }
    std::visit(overloaded{
                   [&](const ExchangePulse& p) {
                       const Coupling& c = device.graph.at(p.i, p.j);
                       state.apply_2q(exchange_propagator(c.J, c.Jz, p.t), p.i, p.j);
                   },
                   [&](const FieldPulse& p) {
                       const auto phases = field_phases(device.field, p.t);
                       state.apply_diagonal(phases);
                   },
                   [&](const IdealZPulse& p) {
                       Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
                       rz(0, 0) = std::polar(1.0, -p.angle);
                       rz(1, 1) = std::polar(1.0, p.angle);
                       state.apply_1q(rz, p.q);
                   },
               },
               pulse);
}

void apply_sequence(const PulseSequence& seq, const Device& device, StateVector& state) {
    for (const auto& p : seq.pulses()) apply_pulse(p, device, state);
}

Matrix compile_range(const PulseSequence& seq, const Device& device, size_t begin, size_t end) {
    const int n = device.num_qubits();
    const auto dim = Eigen::Index{1} << n;
    Matrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        StateVector s(n, static_cast<uint64_t>(col));
        for (size_t k = begin; k < end; ++k) apply_pulse(seq.pulses()[k], device, s);
        u.col(col) = s.amplitudes();
    }
    return u;
}

Matrix compile(const PulseSequence& seq, const Device& device) {
    return compile_range(seq, device, 0, seq.pulse_count());
}

void write_sequence(std::ostream& out, const PulseSequence& seq, int n_qubits) {
    out << "model " << (seq.model().empty() ? "unspecified" : seq.model()) << "\n";
    out << "gate " << (seq.gate().empty() ? "unspecified" : seq.gate()) << "\n";
    out << "qubits " << n_qubits << "\n";
    out << "# pulses " << seq.pulse_count() << "\n";
    for (const auto& s : seq.segments()) {
        out << "# segment " << s.name << " " << s.begin << " " << s.end << "\n";
    }
    for (const auto& p : seq.pulses()) {
        std::visit(overloaded{
                       [&](const ExchangePulse& e) { out << fmt::format("EX {} {} {:.17g}\n", e.i, e.j, e.t); },
                       [&](const FieldPulse& f) { out << fmt::format("GF {:.17g}\n", f.t); },
                       [&](const IdealZPulse& z) { out << fmt::format("ZR {} {:.17g}\n", z.q, z.angle); },
                   },
                   p);
    }
}

std::string to_text(const PulseSequence& seq, int n_qubits) {
    std::ostringstream os;
    write_sequence(os, seq, n_qubits);
    return os.str();
}

PulseSequence read_sequence(std::istream& in) {
    PulseSequence seq;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto fail = [&] { throw std::invalid_argument(fmt::format("pulse text line {}: cannot parse", line_no)); };
        if (tag == "model") {
            std::string m;
            if (!(ls >> m)) fail();
            seq.set_model(m);
        } else if (tag == "gate") {
            std::string g;
            if (!(ls >> g)) fail();
            seq.set_gate(g);
        } else if (tag == "qubits") {
            int n = 0;
            if (!(ls >> n)) fail();
        } else if (tag == "EX") {
            ExchangePulse p;
            if (!(ls >> p.i >> p.j >> p.t)) fail();
            seq.append(p);
        } else if (tag == "GF") {
            FieldPulse p;
            if (!(ls >> p.t)) fail();
            seq.append(p);
        } else if (tag == "ZR") {
            IdealZPulse p;
            if (!(ls >> p.q >> p.angle)) fail();
            seq.append(p);
        } else {
            fail();
        }
    }
    return seq;
}

namespace generators {

Matrix xbar(int i, int j, int n) {
    using namespace pauli_matrix;
    Matrix xx = kron(X(), X());
    Matrix yy = kron(Y(), Y());
    return kron_embed(0.5 * (xx + yy), {i, j}, n);
}

Matrix ybar(int i, int j, int n) {
    using namespace pauli_matrix;
    Matrix yx = kron(Y(), X());
    Matrix xy = kron(X(), Y());
    return kron_embed(0.5 * (yx - xy), {i, j}, n);
}

Matrix zbar(int i, int j, int n) {
    using namespace pauli_matrix;
    return 0.5 * (kron_embed(Z(), {i}, n) - kron_embed(Z(), {j}, n));
}

Matrix zz(int i, int j, int n) {
    using namespace pauli_matrix;
    return kron_embed(Matrix(kron(Z(), Z())), {i, j}, n);
}

}  // namespace generators

}  // namespace exft
