#include "zzfree/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zzfree {

namespace {

void gauge_fix(Matrix& V) {
    for (int k = 0; k < V.cols(); ++k) {
        int imax = 0;
        V.col(k).cwiseAbs().maxCoeff(&imax);
        const Complex ph = V(imax, k) / std::abs(V(imax, k));
        V.col(k) /= ph;
    }
}

// Greedy bijection between rows (basis states) and columns (eigenvectors) by
// descending overlap probability.
std::vector<int> assign_by_overlap(const Eigen::MatrixXd& P, bool* ambiguous) {
    const int n = static_cast<int>(P.rows());
    struct Entry { double p; int b, e; };
    std::vector<Entry> flat;
    flat.reserve(n * n);
    for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) flat.push_back({P(b, e), b, e});
    std::sort(flat.begin(), flat.end(), [](const Entry& x, const Entry& y) {
        if (x.p != y.p) return x.p > y.p;
        if (x.b != y.b) return x.b < y.b;  // deterministic tie-break
        return x.e < y.e;
    });
    std::vector<int> of_basis(n, -1);
    std::vector<char> eig_used(n, 0);
    int placed = 0;
    for (const auto& en : flat) {
        if (of_basis[en.b] != -1 || eig_used[en.e]) continue;
        of_basis[en.b] = en.e;
        eig_used[en.e] = 1;
        if (++placed == n) break;
    }
    if (ambiguous) {
        *ambiguous = false;
        for (int e = 0; e < n; ++e) {
            double best = -1.0, second = -1.0;
            for (int b = 0; b < n; ++b) {
                const double p = P(b, e);
                if (p > best) { second = best; best = p; }
                else if (p > second) second = p;
            }
            if (best - second < 1e-6) *ambiguous = true;
        }
    }
    return of_basis;
}

}  // namespace

double DressedSpectrum::energy_of(const BareLabel& lab) const {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + lab[k];
    return energies[idx];
}

double DressedSpectrum::overlap_of(const BareLabel& lab) const {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + lab[k];
    return overlaps[idx];
}

DressedSpectrum diagonalize_labeled(const HamiltonianMatrix& H) {
    if (!H.is_hermitian()) throw std::invalid_argument("diagonalize_labeled: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.entries);
    const int n = H.dim();
    const Eigen::MatrixXd P = es.eigenvectors().cwiseAbs2().real();
    DressedSpectrum out;
    const auto of_basis = assign_by_overlap(P, &out.ambiguous);
    out.energies.resize(n);
    out.overlaps.resize(n);
    out.vectors = Matrix(n, n);
    for (int b = 0; b < n; ++b) {
        const int e = of_basis[b];
        out.energies[b] = es.eigenvalues()(e);
        out.overlaps[b] = std::sqrt(P(b, e));
        out.vectors.col(b) = es.eigenvectors().col(e);
    }
    gauge_fix(out.vectors);
    out.basis = H.basis;
    out.dims = H.dims;
    return out;
}

EffectiveTwoQubit sw_effective(const DeviceSpec& device) {
    const auto q = device.qubit_indices();
    const auto c = device.coupler_indices();
    if (q.size() != 2) throw std::invalid_argument("sw_effective: exactly two qubits required");
    if (c.size() > 1) throw std::invalid_argument("sw_effective: at most one coupler supported");

    const auto lad1 = device.subsystems[q[0]].ladder();
    const auto lad2 = device.subsystems[q[1]].ladder();
    const double w1 = lad1.omega01(), d1 = lad1.anharmonicity();
    const double w2 = lad2.omega01(), d2 = lad2.anharmonicity();

    double g1c = 0.0, g2c = 0.0, g12 = 0.0, wc = 0.0;
    const std::string id1 = device.subsystems[q[0]].id;
    const std::string id2 = device.subsystems[q[1]].id;
    if (!c.empty()) {
        wc = device.subsystems[c[0]].ladder().omega01();
        const std::string idc = device.subsystems[c[0]].id;
        for (const auto& cp : device.couplings) {
            if ((cp.i == id1 && cp.j == idc) || (cp.i == idc && cp.j == id1)) g1c = cp.g;
            if ((cp.i == id2 && cp.j == idc) || (cp.i == idc && cp.j == id2)) g2c = cp.g;
        }
    }
    for (const auto& cp : device.couplings)
        if ((cp.i == id1 && cp.j == id2) || (cp.i == id2 && cp.j == id1)) g12 = cp.g;

    EffectiveTwoQubit eff;
    if (c.empty() || (g1c == 0.0 && g2c == 0.0)) {
        eff.omega1_bar = w1;
        eff.omega2_bar = w2;
        eff.delta1_bar = d1;
        eff.delta2_bar = d2;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) eff.J[a][b] = g12;
        return eff;
    }

    const double D1 = wc - w1, D2 = wc - w2;
    if (std::abs(D1) < 10.0 * std::abs(g1c) || std::abs(D2) < 10.0 * std::abs(g2c))
        throw std::domain_error("sw_effective: dispersive condition |Delta_q| >= 10 g_qc violated");
    eff.omega1_bar = w1 - g1c * g1c / D1;
    eff.omega2_bar = w2 - g2c * g2c / D2;
    eff.delta1_bar = d1 * (1.0 - 2.0 * g1c * g1c / (D1 * (D1 - d1)));
    eff.delta2_bar = d2 * (1.0 - 2.0 * g2c * g2c / (D2 * (D2 - d2)));
    for (int n1 = 0; n1 < 2; ++n1) {
        for (int n2 = 0; n2 < 2; ++n2) {
            const double w1n = w1 + n1 * d1, w2n = w2 + n2 * d2;
            eff.J[n1][n2] = g12 - g1c * g2c / 2.0 *
                (1.0 / (wc - w1n) + 1.0 / (wc - w2n) + 1.0 / (wc + w1n) + 1.0 / (wc + w2n));
        }
    }
    return eff;
}

BlockDecomposition least_action_blockdiag(const Matrix& H,
                                          const std::vector<std::vector<int>>& blocks) {
    const int n = static_cast<int>(H.rows());
    {
        std::vector<char> seen(n, 0);
        int count = 0;
        for (const auto& blk : blocks)
            for (int i : blk) {
                if (i < 0 || i >= n || seen[i]) throw std::invalid_argument("blocks must partition indices");
                seen[i] = 1;
                ++count;
            }
        if (count != n) throw std::invalid_argument("blocks must cover all indices");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const Matrix& S0 = es.eigenvectors();

    // per-block squared support of each eigenvector
    const int nb = static_cast<int>(blocks.size());
    Eigen::MatrixXd sup(nb, n);
    for (int b = 0; b < nb; ++b) {
        for (int e = 0; e < n; ++e) {
            double s = 0.0;
            for (int i : blocks[b]) s += std::norm(S0(i, e));
            sup(b, e) = s;
        }
    }
    struct Entry { double s; int b, e; };
    std::vector<Entry> flat;
    flat.reserve(nb * n);
    for (int b = 0; b < nb; ++b)
        for (int e = 0; e < n; ++e) flat.push_back({sup(b, e), b, e});
    std::sort(flat.begin(), flat.end(), [](const Entry& x, const Entry& y) {
        if (x.s != y.s) return x.s > y.s;
        if (x.b != y.b) return x.b < y.b;  // ties toward the computational block
        return x.e < y.e;
    });
    std::vector<int> quota(nb);
    for (int b = 0; b < nb; ++b) quota[b] = static_cast<int>(blocks[b].size());
    std::vector<int> of_eig(n, -1);
    std::vector<int> got(nb, 0);
    double min_sup = 1.0;
    for (const auto& en : flat) {
        if (of_eig[en.e] != -1 || got[en.b] >= quota[en.b]) continue;
        of_eig[en.e] = en.b;
        ++got[en.b];
        min_sup = std::min(min_sup, en.s);
    }

    // arrange eigenvector columns into their blocks' index positions
    Matrix S = Matrix::Zero(n, n);
    for (int b = 0; b < nb; ++b) {
        std::vector<int> cols;
        for (int e = 0; e < n; ++e)
            if (of_eig[e] == b) cols.push_back(e);
        for (size_t k = 0; k < cols.size(); ++k) S.col(blocks[b][k]) = S0.col(cols[k]);
    }
    Matrix SBD = Matrix::Zero(n, n);
    for (const auto& blk : blocks)
        for (int i : blk)
            for (int j : blk) SBD(i, j) = S(i, j);

    // S_P^{-1/2} block by block
    Matrix SPinv = Matrix::Zero(n, n);
    for (const auto& blk : blocks) {
        const int m = static_cast<int>(blk.size());
        Matrix sp(m, m);
        for (int r = 0; r < m; ++r)
            for (int cc = 0; cc < m; ++cc) {
                Complex acc = 0.0;
                for (int k : blk) acc += SBD(blk[r], k) * std::conj(SBD(blk[cc], k));
                sp(r, cc) = acc;
            }
        Eigen::SelfAdjointEigenSolver<Matrix> esp(sp);
        if (esp.eigenvalues().minCoeff() < 1e-12)
            throw std::domain_error("least_action: singular S_BD (degenerate block assignment)");
        const Matrix inv_sqrt = esp.eigenvectors() *
                                esp.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                esp.eigenvectors().adjoint();
        for (int r = 0; r < m; ++r)
            for (int cc = 0; cc < m; ++cc) SPinv(blk[r], blk[cc]) = inv_sqrt(r, cc);
    }

    BlockDecomposition out;
    out.T = S * SBD.adjoint() * SPinv;
    out.H_BD = out.T.adjoint() * H * out.T;
    out.blocks = blocks;
    out.min_block_support = std::sqrt(min_sup);
    return out;
}

double pauli_divisor(const std::string& label) {
    int weight = 0;
    bool has_xy = false;
    for (char c : label) {
        if (c != 'I') ++weight;
        if (c == 'X' || c == 'Y') has_xy = true;
    }
    if (weight == 0) return 1.0;
    return has_xy ? 2.0 : std::pow(2.0, weight);
}

namespace {

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

Matrix pauli_string(const std::string& label) {
    Matrix M = Matrix::Identity(1, 1);
    for (char c : label) {
        const Matrix p = pauli_1q(c);
        Matrix next(M.rows() * 2, M.cols() * 2);
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = M(i, j) * p;
        M = std::move(next);
    }
    return M;
}

void enumerate_labels(int nq, std::vector<std::string>& out) {
    static const char* letters = "IXYZ";
    out.clear();
    const int total = 1 << (2 * nq);
    for (int code = 0; code < total; ++code) {
        std::string s(nq, 'I');
        int c = code;
        for (int k = nq - 1; k >= 0; --k) {
            s[k] = letters[c & 3];
            c >>= 2;
        }
        out.push_back(s);
    }
}

}  // namespace

double PauliCoefficients::get(const std::string& label) const {
    const auto it = values.find(label);
    return it == values.end() ? 0.0 : it->second;
}

Matrix PauliCoefficients::reconstruct() const {
    const int dim = 1 << nqubits;
    Matrix H = Matrix::Zero(dim, dim);
    for (const auto& [label, v] : values) H += (v / pauli_divisor(label)) * pauli_string(label);
    return H;
}

PauliCoefficients pauli_decompose(const Matrix& H) {
    const int dim = static_cast<int>(H.rows());
    int nq = 0;
    if (dim == 4) nq = 2;
    else if (dim == 8) nq = 3;
    else throw std::invalid_argument("pauli_decompose: dimension must be 4 or 8");
    PauliCoefficients out;
    out.nqubits = nq;
    std::vector<std::string> labels;
    enumerate_labels(nq, labels);
    for (const auto& lab : labels) {
        const Matrix P = pauli_string(lab);
        const double tr = (P * H).trace().real();
        out.values[lab] = tr * pauli_divisor(lab) / dim;
    }
    return out;
}

}  // namespace zzfree
