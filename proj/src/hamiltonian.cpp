#include "zzfree/hamiltonian.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

#include "zzfree/transforms.hpp"

namespace zzfree {

LevelLadder SubsystemSpec::ladder() const {
    switch (kind) {
        case SubsystemKind::Transmon:
            return transmon_charge_spectrum(std::get<TransmonParams>(params), dim);
        case SubsystemKind::Csfq:
            return csfq_ladder(std::get<CsfqParams>(params), dim);
        case SubsystemKind::TunableTransmon: {
            const auto& p = std::get<TunableTransmonParams>(params);
            const auto s = tunable_transmon_freq(p);
            return duffing_ladder(DuffingParams{s.omega01, s.delta, dim});
        }
        case SubsystemKind::Resonator: {
            const auto& p = std::get<ResonatorParams>(params);
            std::vector<double> e(dim);
            for (int n = 0; n < dim; ++n) e[n] = p.frequency() * n;
            return LevelLadder{std::move(e)};
        }
        case SubsystemKind::ExplicitLadder: {
            const auto& p = std::get<ExplicitLadderParams>(params);
            if (!p.energies.empty()) {
                if (static_cast<int>(p.energies.size()) < dim)
                    throw std::invalid_argument("explicit ladder shorter than dim for " + id);
                std::vector<double> e(p.energies.begin(), p.energies.begin() + dim);
                for (auto& x : e) x -= p.energies.front();
                return LevelLadder{std::move(e)};
            }
            DuffingParams d = p.duffing;
            d.nlevels = dim;
            return duffing_ladder(d);
        }
    }
    throw std::logic_error("unreachable");
}

int DeviceSpec::index_of(const std::string& id) const {
    for (size_t i = 0; i < subsystems.size(); ++i)
        if (subsystems[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown subsystem id: " + id);
}

const SubsystemSpec& DeviceSpec::subsystem(const std::string& id) const {
    return subsystems[index_of(id)];
}

std::vector<int> DeviceSpec::qubit_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < subsystems.size(); ++i)
        if (subsystems[i].role == SubsystemRole::Qubit) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> DeviceSpec::coupler_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < subsystems.size(); ++i)
        if (subsystems[i].role == SubsystemRole::Coupler) out.push_back(static_cast<int>(i));
    return out;
}

void DeviceSpec::validate() const {
    std::set<std::string> ids;
    for (const auto& s : subsystems) {
        if (s.dim < 2) throw std::invalid_argument("subsystem dim >= 2 required: " + s.id);
        if (!ids.insert(s.id).second) throw std::invalid_argument("duplicate subsystem id: " + s.id);
    }
    for (const auto& c : couplings) {
        if (c.i == c.j) throw std::invalid_argument("self-coupling on " + c.i);
        index_of(c.i);
        index_of(c.j);
    }
}

int HamiltonianMatrix::index_of(const BareLabel& lab) const {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + lab[k];
    return idx;
}

int HamiltonianMatrix::total_excitation(int basis_index) const {
    const auto& lab = basis[basis_index];
    return std::accumulate(lab.begin(), lab.end(), 0);
}

bool HamiltonianMatrix::is_hermitian(double rel_tol) const {
    const double scale = entries.cwiseAbs().maxCoeff();
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * std::max(scale, 1.0);
}

RealMatrix lowering(int dim) {
    RealMatrix a = RealMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(n + 1.0);
    return a;
}

Matrix embed(const std::vector<int>& dims, int which, const Matrix& op) {
    Matrix M = Matrix::Identity(1, 1);
    for (size_t k = 0; k < dims.size(); ++k) {
        const Matrix& blk = (static_cast<int>(k) == which)
                                ? op
                                : static_cast<Matrix>(Matrix::Identity(dims[k], dims[k]));
        Matrix next(M.rows() * blk.rows(), M.cols() * blk.cols());
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j)
                next.block(i * blk.rows(), j * blk.cols(), blk.rows(), blk.cols()) = M(i, j) * blk;
        M = std::move(next);
    }
    return M;
}

HamiltonianMatrix build_static(const DeviceSpec& device) {
    device.validate();
    std::vector<int> dims;
    long total = 1;
    for (const auto& s : device.subsystems) {
        dims.push_back(s.dim);
        total *= s.dim;
        if (total > 100000) throw std::invalid_argument("device dimension exceeds 100000");
    }
    const int D = static_cast<int>(total);
    HamiltonianMatrix H;
    H.dims = dims;
    H.entries = Matrix::Zero(D, D);
    H.basis.resize(D);
    {
        BareLabel lab(dims.size(), 0);
        for (int i = 0; i < D; ++i) {
            H.basis[i] = lab;
            for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
                if (++lab[k] < dims[k]) break;
                lab[k] = 0;
            }
        }
    }
    for (size_t k = 0; k < device.subsystems.size(); ++k) {
        const auto lad = device.subsystems[k].ladder();
        Matrix diag = Matrix::Zero(dims[k], dims[k]);
        for (int n = 0; n < dims[k]; ++n) diag(n, n) = lad.energies[n];
        H.entries += embed(dims, static_cast<int>(k), diag);
    }
    for (const auto& c : device.couplings) {
        const int i = device.index_of(c.i);
        const int j = device.index_of(c.j);
        const Matrix ai = lowering(dims[i]).cast<Complex>();
        const Matrix aj = lowering(dims[j]).cast<Complex>();
        if (device.rwa) {
            const Matrix t = embed(dims, i, ai) * embed(dims, j, Matrix(aj.adjoint()));
            H.entries += c.g * (t + t.adjoint());
        } else {
            const Matrix xi = embed(dims, i, Matrix(ai - ai.adjoint()));
            const Matrix xj = embed(dims, j, Matrix(aj - aj.adjoint()));
            H.entries += -c.g * xi * xj;
        }
    }
    return H;
}

DriveOperators build_drive(const DeviceSpec& device, const DriveSpec& drive) {
    std::vector<int> dims;
    for (const auto& s : device.subsystems) dims.push_back(s.dim);
    const int ic = device.index_of(drive.control);
    const auto ladder_x = [&](int which) {
        const Matrix a = lowering(dims[which]).cast<Complex>();
        return embed(dims, which, Matrix(a + a.adjoint()));
    };
    DriveOperators ops;
    ops.control = drive.Omega * ladder_x(ic);
    const int D = ops.control.rows();
    ops.crosstalk = Matrix::Zero(D, D);
    if (drive.crosstalk_target) {
        const int it = device.index_of(*drive.crosstalk_target);
        ops.crosstalk = drive.R * drive.Omega * ladder_x(it);
    }
    return ops;
}

HamiltonianMatrix rotating_frame_rwa(const HamiltonianMatrix& H_static,
                                     const DriveOperators& ops, const DriveSpec& drive,
                                     double omega_d) {
    const DressedSpectrum ds = diagonalize_labeled(H_static);
    const int D = H_static.dim();
    const Matrix Dc = ds.vectors.adjoint() * ops.control * ds.vectors;
    const Matrix Dt = ds.vectors.adjoint() * ops.crosstalk * ds.vectors;

    HamiltonianMatrix out;
    out.dims = H_static.dims;
    out.basis = H_static.basis;
    out.entries = Matrix::Zero(D, D);
    std::vector<int> ntot(D);
    for (int i = 0; i < D; ++i) ntot[i] = H_static.total_excitation(i);
    for (int i = 0; i < D; ++i) out.entries(i, i) = ds.energies[i] - omega_d * ntot[i];
    const Complex I(0.0, 1.0);
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) {
            const int dn = ntot[i] - ntot[j];
            if (std::abs(dn) != 1) continue;  // everything else still oscillates
            const Complex pc = std::exp(-I * drive.phi0 * static_cast<double>(dn));
            const Complex pt = std::exp(-I * (drive.phi0 + drive.phiR) * static_cast<double>(dn));
            out.entries(i, j) += 0.5 * pc * Dc(i, j) + 0.5 * pt * Dt(i, j);
        }
    }
    return out;
}

}  // namespace zzfree
