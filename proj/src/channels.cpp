#include "zzfree/channels.hpp"

#include <cmath>
#include <numbers>

#include "zzfree/errors.hpp"

namespace zzfree {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix pauli_1q(char c) {
    Matrix m(2, 2);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("bad Pauli label");
    }
    return m;
}

const std::vector<Matrix>& two_qubit_paulis() {
    static const std::vector<Matrix> basis = [] {
        std::vector<Matrix> out;
        const char* letters = "IXYZ";
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const Matrix p1 = pauli_1q(letters[a]), p2 = pauli_1q(letters[b]);
                Matrix P(4, 4);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) P.block(i * 2, j * 2, 2, 2) = p1(i, j) * p2;
                out.push_back(P);
            }
        }
        return out;
    }();
    return basis;
}

Matrix expm_herm(const Matrix& H, double scale) {
    // exp(-i * scale * H) through the eigendecomposition
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    Eigen::VectorXcd ph(w.size());
    for (int i = 0; i < w.size(); ++i) ph(i) = std::exp(Complex(0.0, -scale * w(i)));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

QuantumChannel QuantumChannel::identity() {
    QuantumChannel c;
    c.ptm.setIdentity();
    return c;
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
    QuantumChannel c;
    c.ptm = next.ptm * ptm;
    return c;
}

bool QuantumChannel::trace_preserving(double tol) const {
    if (std::abs(ptm(0, 0) - 1.0) > tol) return false;
    for (int j = 1; j < 16; ++j)
        if (std::abs(ptm(0, j)) > tol) return false;
    return true;
}

QuantumChannel ptm_of_unitary(const Matrix& U) {
    if (U.rows() != 4 || U.cols() != 4) throw std::invalid_argument("ptm_of_unitary: need 4x4");
    if ((U * U.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("ptm_of_unitary: input is not unitary");
    const auto& P = two_qubit_paulis();
    QuantumChannel c;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            c.ptm(i, j) = ((P[i] * U * P[j] * U.adjoint()).trace() / 4.0).real();
    return c;
}

namespace {

// The stated T1/T2 map on a single-qubit density matrix.
Matrix decohere_1q(const Matrix& rho, double T1, double T2, double t_us) {
    const double q = std::exp(-t_us / T2);
    const double p = 1.0 - std::exp(-t_us / T1);
    const Matrix Z = pauli_1q('Z');
    Matrix e01(2, 2), e11(2, 2);
    e01 << 0, 1, 0, 0;  // |0><1|
    e11 << 0, 0, 0, 1;  // |1><1|
    return (1.0 - q) / 2.0 * Z * rho * Z + (1.0 + q) / 2.0 * rho +
           p / 2.0 * e01 * rho * e01.adjoint() - p / 2.0 * e11 * rho * e11;
}

}  // namespace

QuantumChannel decoherence_channel(const CoherenceTimes& ct, double t_ns, int which_qubit) {
    if (t_ns < 0.0) throw std::invalid_argument("decoherence_channel: t >= 0 required");
    if (ct.T1 <= 0.0 || ct.T2 <= 0.0) return QuantumChannel::identity();
    const double t_us = t_ns / 1000.0;
    const auto& P = two_qubit_paulis();
    QuantumChannel c;
    for (int j = 0; j < 16; ++j) {
        // apply the map to the traced factor of P_j on `which_qubit`
        Matrix out = Matrix::Zero(4, 4);
        // P_j = A (x) B; decompose by slicing the known tensor structure
        const int ja = j / 4, jb = j % 4;
        const char* letters = "IXYZ";
        const Matrix A = pauli_1q(letters[ja]);
        const Matrix B = pauli_1q(letters[jb]);
        const Matrix A2 = (which_qubit == 0) ? decohere_1q(A, ct.T1, ct.T2, t_us) : A;
        const Matrix B2 = (which_qubit == 1) ? decohere_1q(B, ct.T1, ct.T2, t_us) : B;
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) out.block(r * 2, s * 2, 2, 2) = A2(r, s) * B2;
        for (int i = 0; i < 16; ++i) c.ptm(i, j) = ((P[i] * out).trace() / 4.0).real();
    }
    return c;
}

double average_gate_fidelity(const QuantumChannel& actual, const QuantumChannel& ideal) {
    const double d = 4.0;
    return ((ideal.ptm.transpose() * actual.ptm).trace() / d + 1.0) / (d + 1.0);
}

EchoedCrResult echoed_cr_error(const PauliCoefficients& plus, const PauliCoefficients& minus,
                               double alpha_zz, const CoherenceTimes& q1,
                               const CoherenceTimes& q2, double tau_ns, double tg_ns) {
    const auto segment = [](const PauliCoefficients& c) {
        PauliCoefficients trimmed = c;
        trimmed.values["ZZ"] = 0.0;  // ZZ acts once, globally
        trimmed.values["II"] = 0.0;
        return trimmed.reconstruct();
    };
    const Matrix Hp = segment(plus), Hm = segment(minus);
    const Matrix Ucr_p = expm_herm(Hp, 2.0 * kPi * tau_ns);
    const Matrix Ucr_m = expm_herm(Hm, 2.0 * kPi * tau_ns);
    Matrix XI = Matrix::Zero(4, 4);
    XI(0, 2) = XI(2, 0) = XI(1, 3) = XI(3, 1) = 1.0;
    Matrix ZZ = Matrix::Zero(4, 4);
    ZZ.diagonal() << 1, -1, -1, 1;
    const Matrix Uzz = expm_herm(ZZ, 2.0 * kPi * alpha_zz * tg_ns / 4.0);

    QuantumChannel ch = ptm_of_unitary(Ucr_p)
                            .then(ptm_of_unitary(XI))
                            .then(ptm_of_unitary(Ucr_m))
                            .then(ptm_of_unitary(XI))
                            .then(ptm_of_unitary(Uzz))
                            .then(decoherence_channel(q2, tg_ns, 1))
                            .then(decoherence_channel(q1, tg_ns, 0));

    const double sgn = (plus.get("ZX") >= 0.0) ? 1.0 : -1.0;
    Matrix ZX = Matrix::Zero(4, 4);
    ZX(0, 1) = ZX(1, 0) = 1.0;
    ZX(2, 3) = ZX(3, 2) = -1.0;
    const Matrix Uideal = expm_herm(ZX, sgn * kPi / 4.0);  // ZX_{+-pi/2}

    EchoedCrResult out;
    out.fidelity = average_gate_fidelity(ch, ptm_of_unitary(Uideal));
    out.error = 1.0 - out.fidelity;
    return out;
}

double flux_dephasing_rate(double D_phi, const DephasingModel& model, DephasingForm form,
                           double t_us) {
    if (D_phi < 0.0) throw std::invalid_argument("flux_dephasing_rate: D_phi >= 0 required");
    if (form == DephasingForm::Linear) return model.slope * D_phi + model.offset;
    if (model.omega_ir * t_us >= 1.0)
        throw DomainError("flux_dephasing_rate: omega_ir * t must be < 1 for the sqrt-log form");
    // D_phi in GHz/Phi0 = 1e3 us^-1/Phi0
    return 2.0 * kPi * (D_phi * 1e3) * std::sqrt(model.A_phi * std::abs(std::log(model.omega_ir * t_us)));
}

double TanhPulse::at(double t, double tg) const {
    const double s = 1.0 / (2.0 * tg);
    const double rise = f0 + std::tanh(x * s * t) * (f_end - f0);
    const double fall = f0 + std::tanh(x * s * (2.0 / s - t)) * (f_end - f0);
    const double w1 = (t <= 1.0 / s) ? 1.0 : 0.0;
    return rise * w1 + fall * (1.0 - w1);
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double ZzFit::operator()(double omega1) const {
    return 1e-3 * (1.0 / (inv_scale * (omega1 - inv_pole)) +
                   quad_scale * (omega1 - quad_center) * (omega1 - quad_center) + offset);
}

double cz_phase_gate_length(const TanhPulse& pulse, const Polynomial& omega1_of_f,
                            const ZzFit& zz_of_omega1, double tg_lo, double tg_hi) {
    const auto cycles = [&](double tg) {
        const int N = 4000;
        double acc = 0.0;
        for (int i = 0; i < N; ++i) {
            const double t = (i + 0.5) * tg / N;
            const double w1 = omega1_of_f(pulse.at(t, tg));
            if (w1 <= zz_of_omega1.inv_pole)
                throw DomainError("cz: flux path crosses the zz-fit pole");
            acc += zz_of_omega1(w1) * tg / N;
        }
        return acc;  // GHz * ns; pi phase at 1/2
    };
    double lo = tg_lo, hi = tg_hi;
    if (cycles(lo) > 0.5 || cycles(hi) < 0.5)
        throw DomainError("cz: gate length bracket does not contain the pi-phase solution");
    while (hi - lo > 0.1) {
        const double m = 0.5 * (lo + hi);
        if (cycles(m) < 0.5) lo = m;
        else hi = m;
    }
    return 0.5 * (lo + hi);
}

double degenerate_gap(const HamiltonianMatrix& H, const BareLabel& a, const BareLabel& b) {
    const int ia = H.index_of(a), ib = H.index_of(b);
    const int n = H.dim();
    const Eigen::VectorXd E0 = H.entries.diagonal().real();
    Matrix V = H.entries;
    V.diagonal().setZero();
    if (std::abs(V(ia, ib)) > 0.0 && std::abs(E0(ia) - E0(ib)) > 10.0 * std::abs(V(ia, ib)))
        throw DomainError("degenerate_gap: labels are not near-degenerate");

    double E = 0.5 * (E0(ia) + E0(ib));
    double gap = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::Matrix2cd Heff;
        const int q[2] = {ia, ib};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                Complex acc = (r == c) ? Complex(E0(q[r])) : Complex(0.0);
                acc += V(q[r], q[c]);
                for (int k = 0; k < n; ++k) {
                    if (k == ia || k == ib) continue;
                    acc += V(q[r], k) * V(k, q[c]) / (E - E0(k));
                }
                Heff(r, c) = acc;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(Heff);
        gap = es.eigenvalues()(1) - es.eigenvalues()(0);
        E = 0.5 * (es.eigenvalues()(0) + es.eigenvalues()(1));
    }
    return gap;
}

}  // namespace zzfree
