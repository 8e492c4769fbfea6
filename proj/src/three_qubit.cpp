#include "zzfree/three_qubit.hpp"

#include <algorithm>
#include <cmath>

#include "zzfree/errors.hpp"

namespace zzfree {

ThreeQubitTopology ThreeQubitDevice::topology() const {
    if (couplers.size() == 3) return ThreeQubitTopology::Triangle;
    if (couplers.size() == 2) return ThreeQubitTopology::Chain;
    throw ConfigError("three-qubit device needs 2 (chain) or 3 (triangle) couplers");
}

double ThreeQubitDevice::direct(int a, int b) const {
    if (a > b) std::swap(a, b);
    const auto it = g_direct.find({a, b});
    return it == g_direct.end() ? 0.0 : it->second;
}

ThreeQubitDevice ThreeQubitDevice::from_device(const DeviceSpec& device) {
    const auto q = device.qubit_indices();
    if (q.size() != 3) throw ConfigError("three-qubit device: exactly three qubits required");
    ThreeQubitDevice out;
    std::map<int, int> qpos;  // subsystem index -> qubit slot
    for (int k = 0; k < 3; ++k) {
        const auto lad = device.subsystems[q[k]].ladder();
        out.omega[k] = lad.omega01();
        out.delta[k] = lad.anharmonicity();
        qpos[q[k]] = k;
    }
    for (int ci : device.coupler_indices()) {
        ThreeQubitCoupler cp;
        cp.omega_c = device.subsystems[ci].ladder().omega01();
        int found = 0;
        for (const auto& c : device.couplings) {
            const int i = device.index_of(c.i), j = device.index_of(c.j);
            int qi = -1;
            if (i == ci && qpos.count(j)) qi = qpos[j];
            if (j == ci && qpos.count(i)) qi = qpos[i];
            if (qi < 0) continue;
            if (found == 0) { cp.qa = qi; cp.ga = c.g; }
            else { cp.qb = qi; cp.gb = c.g; }
            ++found;
        }
        if (found != 2) throw ConfigError("coupler " + device.subsystems[ci].id + " must couple exactly two qubits");
        if (cp.qa > cp.qb) { std::swap(cp.qa, cp.qb); std::swap(cp.ga, cp.gb); }
        out.couplers.push_back(cp);
    }
    for (const auto& c : device.couplings) {
        const int i = device.index_of(c.i), j = device.index_of(c.j);
        if (qpos.count(i) && qpos.count(j)) {
            int a = qpos[i], b = qpos[j];
            if (a > b) std::swap(a, b);
            out.g_direct[{a, b}] = c.g;
        }
    }
    return out;
}

const char* method_name(ThreeQubitMethod m) {
    switch (m) {
        case ThreeQubitMethod::RwaPt: return "RWA-PT";
        case ThreeQubitMethod::RwaSsw: return "RWA-SSW";
        case ThreeQubitMethod::RwaSw: return "RWA-SW";
        case ThreeQubitMethod::NrwaPt: return "NRWA-PT";
        case ThreeQubitMethod::NrwaSsw: return "NRWA-SSW";
        case ThreeQubitMethod::NrwaSw: return "NRWA-SW";
    }
    return "?";
}

ThreeQubitMethod parse_method(const std::string& name) {
    for (auto m : {ThreeQubitMethod::RwaPt, ThreeQubitMethod::RwaSsw, ThreeQubitMethod::RwaSw,
                   ThreeQubitMethod::NrwaPt, ThreeQubitMethod::NrwaSsw, ThreeQubitMethod::NrwaSw})
        if (name == method_name(m)) return m;
    throw ConfigError("unknown three-qubit method: " + name);
}

int ThreeQubitEffective::pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 1) return 0;
    if (a == 0 && b == 2) return 1;
    if (a == 1 && b == 2) return 2;
    throw std::logic_error("bad qubit pair");
}

ThreeQubitEffective effective_couplings(const ThreeQubitDevice& dev) {
    ThreeQubitEffective out;
    const auto wq = [&](int q, int n) { return dev.omega[q] + n * dev.delta[q]; };
    for (int q = 0; q < 3; ++q) {
        for (int n = 0; n < 3; ++n) {
            double shift = 0.0;
            for (const auto& cp : dev.couplers) {
                double g = 0.0;
                if (cp.qa == q) g = cp.ga;
                else if (cp.qb == q) g = cp.gb;
                else continue;
                const double D = cp.omega_c - wq(q, n);
                if (std::abs(D) < 5.0 * std::abs(g))
                    throw DomainError("effective_couplings: qubit-coupler pair is not dispersive");
                shift += n * g * g / D;
            }
            out.wbar[q][n] = wq(q, n) - shift;
        }
    }
    for (const auto pr : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        const int pi = ThreeQubitEffective::pair_index(pr.first, pr.second);
        for (int n = 0; n < 2; ++n) {
            for (int m = 0; m < 2; ++m) {
                double val = dev.direct(pr.first, pr.second);
                for (const auto& cp : dev.couplers) {
                    if (cp.qa != pr.first || cp.qb != pr.second) continue;
                    const double wa = wq(pr.first, n), wb = wq(pr.second, m);
                    val += -cp.ga * cp.gb / 2.0 *
                           (1.0 / (cp.omega_c - wa) + 1.0 / (cp.omega_c - wb) +
                            1.0 / (cp.omega_c + wa) + 1.0 / (cp.omega_c + wb));
                }
                out.J[pi][n][m] = val;
            }
        }
    }
    return out;
}

namespace {

struct CounShifts {
    // E^coun for the eight computational labels, indexed b2(q1 q2 q3)
    std::array<double, 8> E{};
};

// Appendix-E counter-rotating energy shifts. Indices here are 1-based to stay
// close to the printed expressions.
CounShifts coun_shifts(const std::array<double, 3>& w, const std::array<double, 3>& d,
                       double J12, double J13, double J23) {
    const auto S = [&](int i, int j) { return w[i - 1] + w[j - 1]; };
    const auto Dl = [&](int i, int j) { return w[i - 1] - w[j - 1]; };
    const double d1 = d[0], d2 = d[1], d3 = d[2];
    const double Jp = 2.0 * J12 * J13 * J23;
    CounShifts c;
    c.E[0b000] = -J12 * J12 / S(1, 2) - J13 * J13 / S(1, 3) - J23 * J23 / S(2, 3) +
                 Jp / (S(1, 2) * S(1, 3) * S(2, 3)) * (S(1, 2) + S(1, 3) + S(2, 3));
    c.E[0b001] = -J12 * J12 / S(1, 2) - 2 * J13 * J13 / (S(1, 3) + d3) -
                 2 * J23 * J23 / (S(2, 3) + d3) +
                 Jp * (2 / (S(1, 2) * (S(1, 3) + d3)) + 2 / (S(1, 2) * (S(2, 3) + d3)) +
                       2 / ((S(1, 3) + d3) * (S(2, 3) + d3)) - 1 / (Dl(3, 1) * S(1, 2)) -
                       1 / (Dl(3, 2) * S(1, 2)));
    c.E[0b010] = -2 * J12 * J12 / (S(1, 2) + d2) - J13 * J13 / S(1, 3) -
                 2 * J23 * J23 / (S(2, 3) + d2) +
                 Jp * (2 / (S(1, 3) * (S(1, 2) + d2)) + 2 / (S(1, 3) * (S(2, 3) + d2)) +
                       2 / ((S(1, 2) + d2) * (S(2, 3) + d2)) - 1 / (Dl(2, 1) * S(1, 3)) -
                       1 / (Dl(2, 3) * S(1, 3)));
    c.E[0b100] = -2 * J12 * J12 / (S(1, 2) + d1) - 2 * J13 * J13 / (S(1, 3) + d1) -
                 J23 * J23 / S(2, 3) +
                 Jp * (2 / (S(2, 3) * (S(1, 3) + d1)) + 2 / (S(2, 3) * (S(1, 2) + d1)) +
                       2 / ((S(1, 3) + d1) * (S(1, 2) + d1)) - 1 / (Dl(1, 2) * S(2, 3)) -
                       1 / (Dl(1, 3) * S(2, 3)));
    c.E[0b011] = -2 * J12 * J12 / (S(1, 2) + d2) - 2 * J13 * J13 / (S(1, 3) + d3) +
                 J23 * J23 / S(2, 3) - 4 * J23 * J23 / (S(2, 3) + d2 + d3) +
                 Jp * (1 / (S(2, 3) * Dl(2, 1)) -
                       2 / (S(1, 2) + d2) * (1 / Dl(3, 1) + 1 / (Dl(3, 2) - d2)) -
                       2 / (S(1, 3) + d3) * (1 / Dl(2, 1) + 1 / (Dl(2, 3) - d3)) +
                       1 / (S(2, 3) * Dl(3, 1)) +
                       4 * (2 * d2 + 2 * d3 + S(1, 2) + S(1, 3) + S(2, 3)) /
                           ((S(2, 3) + d2 + d3) * (S(1, 2) + d2) * (S(1, 3) + d3)));
    c.E[0b101] = -2 * J12 * J12 / (S(1, 2) + d1) + J13 * J13 / S(1, 3) -
                 4 * J13 * J13 / (S(1, 3) + d1 + d3) - 2 * J23 * J23 / (S(2, 3) + d3) +
                 Jp * (1 / (S(1, 3) * Dl(1, 2)) -
                       2 / (S(1, 2) + d1) * (1 / Dl(3, 2) + 1 / (Dl(3, 1) - d1)) -
                       2 / (S(2, 3) + d3) * (1 / Dl(1, 2) + 1 / (Dl(1, 3) - d3)) +
                       1 / (S(1, 3) * Dl(3, 2)) +
                       4 * (2 * d1 + 2 * d3 + S(1, 2) + S(1, 3) + S(2, 3)) /
                           ((S(1, 3) + d1 + d3) * (S(1, 2) + d1) * (S(2, 3) + d3)));
    c.E[0b110] = J12 * J12 / S(1, 2) - 4 * J12 * J12 / (S(1, 2) + d1 + d2) +
                 2 * J13 * J13 / (S(1, 3) + d1) - 2 * J23 * J23 / (S(2, 3) + d2) +
                 Jp * (1 / (S(1, 2) * Dl(1, 3)) -
                       2 / (S(1, 3) + d1) * (1 / Dl(2, 3) + 1 / (Dl(2, 1) - d1)) -
                       2 / (S(2, 3) + d2) * (1 / Dl(1, 3) + 1 / (Dl(1, 2) - d2)) +
                       1 / (S(1, 2) * Dl(2, 3)) +
                       4 * (2 * d1 + 2 * d2 + S(1, 2) + S(1, 3) + S(2, 3)) /
                           ((S(1, 2) + d1 + d2) * (S(1, 3) + d1) * (S(2, 3) + d2)));
    c.E[0b111] = J12 * J12 / S(1, 2) - 4 * J12 * J12 / (S(1, 2) + d1 + d2) +
                 J13 * J13 / S(1, 3) - 4 * J13 * J13 / (S(1, 3) + d1 + d3) +
                 J23 * J23 / S(2, 3) - 4 * J23 * J23 / (S(2, 3) + d2 + d3) +
                 Jp * ((S(1, 2) + S(1, 3) + S(2, 3)) / (S(1, 2) * S(1, 3) * S(2, 3)) +
                       2 / S(1, 2) * (1 / (Dl(1, 3) - d3) + 1 / (Dl(2, 3) - d3)) +
                       2 / S(1, 3) * (1 / (Dl(3, 2) - d2) + 1 / (Dl(1, 2) - d2)) +
                       2 / S(2, 3) * (1 / (Dl(2, 1) - d1) + 1 / (Dl(3, 1) - d1)) +
                       4 / (S(1, 2) + d1 + d2) * (1 / (Dl(1, 3) + d1) + 1 / (Dl(2, 3) + d2)) +
                       4 / (S(1, 3) + d1 + d3) * (1 / (Dl(1, 2) + d1) + 1 / (Dl(3, 2) + d3)) +
                       4 / (S(2, 3) + d2 + d3) * (1 / (Dl(3, 1) + d3) + 1 / (Dl(2, 1) + d2)));
    return c;
}

PauliCoefficients alphas_from_energies(const std::array<double, 8>& E) {
    Matrix H = Matrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) H(i, i) = E[i];
    return pauli_decompose(H);
}

PauliCoefficients pt_alphas(const ThreeQubitDevice& dev, bool nrwa) {
    const auto eff = effective_couplings(dev);
    const std::array<double, 3> w = {eff.wbar[0][0], eff.wbar[1][0], eff.wbar[2][0]};
    const auto& d = dev.delta;
    const double J12 = eff.J[0][0][0], J13 = eff.J[1][0][0], J23 = eff.J[2][0][0];
    const auto Dl = [&](int i, int j) { return w[i - 1] - w[j - 1]; };
    const auto A = [&](int i, int j, int k) {
        return (d[i - 1] * d[j - 1] - d[i - 1] * Dl(i, k) - d[j - 1] * Dl(j, k)) /
               (Dl(i, k) * Dl(j, k));
    };
    const auto B = [&](int i, int j, int k) {
        return (d[i - 1] * d[i - 1] + d[j - 1] * d[j - 1] + d[i - 1] * d[j - 1] +
                d[i - 1] * Dl(i, k) + d[j - 1] * Dl(j, k)) /
               ((Dl(i, k) + d[i - 1]) * (Dl(j, k) + d[j - 1]));
    };
    const auto C = [&](int i, int j, int k) {
        return (d[i - 1] * d[j - 1] + d[j - 1] * d[k - 1] + d[i - 1] * d[k - 1] -
                d[i - 1] * Dl(i, k) - d[j - 1] * Dl(j, k)) /
               ((Dl(i, k) - d[k - 1]) * (Dl(j, k) - d[k - 1]));
    };
    const double Jall = J12 * J13 * J23;
    PauliCoefficients out;
    out.nqubits = 3;
    auto& v = out.values;
    v["ZZI"] = 4 * J12 * J12 * (d[0] + d[1]) / ((Dl(1, 2) + d[0]) * (Dl(1, 2) - d[1])) -
               4 * Jall * (A(1, 2, 3) + B(1, 2, 3) + C(1, 2, 3)) /
                   ((Dl(1, 2) + d[0]) * (Dl(1, 2) - d[1]));
    v["ZIZ"] = 4 * J13 * J13 * (d[0] + d[2]) / ((Dl(1, 3) + d[0]) * (Dl(1, 3) - d[2])) -
               4 * Jall * (A(1, 3, 2) + B(1, 3, 2) + C(1, 3, 2)) /
                   ((Dl(1, 3) + d[0]) * (Dl(1, 3) - d[2]));
    v["IZZ"] = 4 * J23 * J23 * (d[1] + d[2]) / ((Dl(2, 3) + d[1]) * (Dl(2, 3) - d[2])) -
               4 * Jall * (A(2, 3, 1) + B(2, 3, 1) + C(2, 3, 1)) /
                   ((Dl(2, 3) + d[1]) * (Dl(2, 3) - d[2]));
    v["ZZZ"] = 8 * Jall * (B(1, 2, 3) + C(1, 2, 3)) / ((Dl(1, 2) + d[0]) * (Dl(1, 2) - d[1]));
    v["ZII"] = -w[0] - J12 * J12 / Dl(1, 2) - J13 * J13 / Dl(1, 3) -
               2 * Jall / (Dl(1, 2) * Dl(1, 3)) - v["ZZI"] / 2 - v["ZIZ"] / 2 - v["ZZZ"] / 4;
    v["IZI"] = -w[1] - J12 * J12 / Dl(2, 1) - J23 * J23 / Dl(2, 3) -
               2 * Jall / (Dl(2, 1) * Dl(2, 3)) - v["ZZI"] / 2 - v["IZZ"] / 2 - v["ZZZ"] / 4;
    v["IIZ"] = -w[2] - J13 * J13 / Dl(3, 1) - J23 * J23 / Dl(3, 2) -
               2 * Jall / (Dl(3, 1) * Dl(3, 2)) - v["ZIZ"] / 2 - v["IZZ"] / 2 - v["ZZZ"] / 4;
    if (nrwa) {
        const auto c = coun_shifts(w, d, J12, J13, J23);
        const auto& e = c.E;
        v["ZZI"] += (e[0b000] + e[0b110] - e[0b010] - e[0b100] + e[0b001] + e[0b111] -
                     e[0b101] - e[0b011]) / 2;
        v["ZIZ"] += (e[0b000] + e[0b101] - e[0b100] - e[0b001] + e[0b010] + e[0b111] -
                     e[0b011] - e[0b110]) / 2;
        v["IZZ"] += (e[0b000] + e[0b011] - e[0b001] - e[0b010] + e[0b100] + e[0b111] -
                     e[0b101] - e[0b110]) / 2;
        v["ZZZ"] += e[0b000] + e[0b011] - e[0b001] - e[0b010] + e[0b101] + e[0b110] -
                    e[0b100] - e[0b111];
        v["ZII"] += (e[0b000] + e[0b011] + e[0b001] + e[0b010] - e[0b100] - e[0b101] -
                     e[0b110] - e[0b111]) / 4;
        v["IZI"] += (e[0b000] + e[0b001] + e[0b100] + e[0b101] - e[0b010] - e[0b011] -
                     e[0b110] - e[0b111]) / 4;
        v["IIZ"] += (e[0b000] + e[0b100] + e[0b010] + e[0b110] - e[0b001] - e[0b011] -
                     e[0b101] - e[0b111]) / 4;
    }
    return out;
}

// LA-decoupled 27-level computation; SSW uses state-independent J^{00},
// SW keeps the (two-photon-limit) state-resolved map.
PauliCoefficients sw_alphas(const ThreeQubitDevice& dev, bool state_resolved, bool nrwa) {
    const auto eff = effective_couplings(dev);
    std::vector<std::array<int, 3>> states;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (std::max({a, b, c}) <= 1) states.push_back({a, b, c});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (std::max({a, b, c}) > 1) states.push_back({a, b, c});
    const auto find = [&](int a, int b, int c) -> int {
        if (a < 0 || b < 0 || c < 0 || a > 2 || b > 2 || c > 2) return -1;
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i][0] == a && states[i][1] == b && states[i][2] == c)
                return static_cast<int>(i);
        return -1;
    };
    const int n = 27;
    RealMatrix H = RealMatrix::Zero(n, n);
    const auto level = [&](int q, int k) {
        double e = 0.0;
        for (int j = 0; j < k; ++j) e += eff.wbar[q][j];
        return e;
    };
    for (int i = 0; i < n; ++i)
        H(i, i) = level(0, states[i][0]) + level(1, states[i][1]) + level(2, states[i][2]);
    const auto Jof = [&](int qa, int qb, int na, int nb) {
        const int pi = ThreeQubitEffective::pair_index(qa, qb);
        if (!state_resolved) return eff.J[pi][0][0];
        return eff.J[pi][std::min(na, 1)][std::min(nb, 1)];
    };
    for (int i = 0; i < n; ++i) {
        const auto s = states[i];
        for (const auto pr : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const int qa = pr.first, qb = pr.second;
            // exchange |na+1, nb-1><na, nb|
            {
                std::array<int, 3> t = s;
                ++t[qa];
                --t[qb];
                const int j = find(t[0], t[1], t[2]);
                if (j >= 0) {
                    const double amp = std::sqrt((s[qa] + 1.0) * s[qb]) * Jof(qa, qb, s[qa], s[qb] - 1);
                    H(i, j) += amp;
                    H(j, i) += amp;
                }
            }
            if (nrwa) {  // counter-rotating |na+1, nb+1><na, nb|
                std::array<int, 3> t = s;
                ++t[qa];
                ++t[qb];
                const int j = find(t[0], t[1], t[2]);
                if (j >= 0) {
                    const double amp = -std::sqrt((s[qa] + 1.0) * (s[qb] + 1.0)) * Jof(qa, qb, s[qa], s[qb]);
                    H(i, j) += amp;
                    H(j, i) += amp;
                }
            }
        }
    }
    // frequency-collision guard on the computational transitions
    for (const auto pr : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (std::abs((dev.omega[pr.first] + a * dev.delta[pr.first]) -
                             (dev.omega[pr.second] + b * dev.delta[pr.second])) < 0.005)
                    throw DomainError("three_q_pauli: near-degenerate qubit transitions");
    }
    std::vector<int> comp(8), rest(19);
    for (int i = 0; i < 8; ++i) comp[i] = i;
    for (int i = 0; i < 19; ++i) rest[i] = 8 + i;
    const auto bd = least_action_blockdiag(H.cast<Complex>(), {comp, rest});
    Matrix H8 = bd.H_BD.topLeftCorner(8, 8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(H8);
    // assign the 8 eigenvalues to computational labels by overlap
    const Eigen::MatrixXd P = es.eigenvectors().cwiseAbs2().real();
    struct Entry { double p; int b, e; };
    std::vector<Entry> flat;
    for (int b = 0; b < 8; ++b)
        for (int e = 0; e < 8; ++e) flat.push_back({P(b, e), b, e});
    std::sort(flat.begin(), flat.end(), [](const Entry& x, const Entry& y) {
        if (x.p != y.p) return x.p > y.p;
        if (x.b != y.b) return x.b < y.b;
        return x.e < y.e;
    });
    std::array<double, 8> E{};
    std::vector<int> of_basis(8, -1);
    std::vector<char> used(8, 0);
    int placed = 0;
    for (const auto& en : flat) {
        if (of_basis[en.b] != -1 || used[en.e]) continue;
        of_basis[en.b] = en.e;
        used[en.e] = 1;
        if (++placed == 8) break;
    }
    for (int b = 0; b < 8; ++b) {
        // computational state order in `states` is binary-counter order
        const auto s = states[b];
        const int bits = s[0] * 4 + s[1] * 2 + s[2];
        E[bits] = es.eigenvalues()(of_basis[b]);
    }
    return alphas_from_energies(E);
}

}  // namespace

PauliCoefficients three_q_pauli(const ThreeQubitDevice& dev, ThreeQubitMethod method) {
    switch (method) {
        case ThreeQubitMethod::RwaPt: return pt_alphas(dev, false);
        case ThreeQubitMethod::NrwaPt: return pt_alphas(dev, true);
        case ThreeQubitMethod::RwaSsw: return sw_alphas(dev, false, false);
        case ThreeQubitMethod::RwaSw: return sw_alphas(dev, true, false);
        case ThreeQubitMethod::NrwaSsw: return sw_alphas(dev, false, true);
        case ThreeQubitMethod::NrwaSw: return sw_alphas(dev, true, true);
    }
    throw std::logic_error("unreachable");
}

std::map<ThreeQubitMethod, PauliCoefficients> method_comparison(const ThreeQubitDevice& dev) {
    std::map<ThreeQubitMethod, PauliCoefficients> out;
    for (auto m : {ThreeQubitMethod::RwaPt, ThreeQubitMethod::RwaSsw, ThreeQubitMethod::RwaSw,
                   ThreeQubitMethod::NrwaPt, ThreeQubitMethod::NrwaSsw, ThreeQubitMethod::NrwaSw})
        out[m] = three_q_pauli(dev, m);
    return out;
}

}  // namespace zzfree
