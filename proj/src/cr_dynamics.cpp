#include "zzfree/cr_dynamics.hpp"

#include <cmath>
#include <numbers>

#include "zzfree/errors.hpp"

namespace zzfree {

namespace {

constexpr double kPi = std::numbers::pi;
const double kFlagThreshold = 1.0 / std::sqrt(2.0);

struct TwoQubitBasis {
    std::vector<std::array<int, 2>> states;  // (n_ctl, n_tgt), computational first
    std::vector<int> index;                  // flattened lookup

    explicit TwoQubitBasis(int nmax) {
        states = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        for (int a = 0; a <= nmax; ++a)
            for (int b = 0; b <= nmax - a; ++b)
                if (a > 1 || b > 1) states.push_back({a, b});
        index.assign((nmax + 1) * (nmax + 1), -1);
        for (size_t i = 0; i < states.size(); ++i)
            index[states[i][0] * (nmax + 1) + states[i][1]] = static_cast<int>(i);
    }
    int find(int a, int b, int nmax) const {
        if (a < 0 || b < 0 || a > nmax || b > nmax || a + b > nmax) return -1;
        return index[a * (nmax + 1) + b];
    }
};

}  // namespace

struct CrEngine::Impl {
    CrOptions opts;
    DriveSpec drive;

    // dressed static data, basis ordered by label
    Eigen::VectorXd energies;
    std::vector<int> ntot;
    Matrix drive_ctl;   // dressed ladder operator of the control (a + a^+)
    Matrix drive_tgt;   // same on the target
    std::vector<int> comp;  // computational indices, ordered (00, 01, 10, 11)
    EffectiveTwoQubit eff;
    bool has_eff = false;

    Matrix rotated(double Omega, double cancel_A, double cancel_phi, double omega_d) const {
        const int n = static_cast<int>(energies.size());
        Matrix H = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) H(i, i) = energies(i) - omega_d * ntot[i];
        const Complex I(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int dn = ntot[i] - ntot[j];
                if (std::abs(dn) != 1) continue;
                const double d = static_cast<double>(dn);
                Complex v = 0.5 * Omega * std::exp(-I * drive.phi0 * d) * drive_ctl(i, j);
                v += 0.5 * drive.R * Omega * std::exp(-I * (drive.phi0 + drive.phiR) * d) *
                     drive_tgt(i, j);
                if (cancel_A != 0.0)
                    v += 0.5 * cancel_A * std::exp(-I * cancel_phi * d) * drive_tgt(i, j);
                H(i, j) += v;
            }
        }
        return H;
    }
};

namespace {

// Dressed two-qubit matrix of the SW reduction: Duffing diagonal built from
// (omega_bar, delta_bar) and exchange couplings with the two-photon-limit J.
// Qubit 1 of `eff` must be the control.
void build_effective_engine(CrEngine::Impl& im, const EffectiveTwoQubit& eff) {
    const int nmax = im.opts.eff_nmax;
    const TwoQubitBasis basis(nmax);
    const int n = static_cast<int>(basis.states.size());
    RealMatrix H = RealMatrix::Zero(n, n);
    const auto level = [](double w, double d, int k) { return w * k + d / 2.0 * k * (k - 1); };
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = basis.states[i];
        H(i, i) = level(eff.omega1_bar, eff.delta1_bar, a) + level(eff.omega2_bar, eff.delta2_bar, b);
    }
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = basis.states[i];
        const int j = basis.find(a + 1, b - 1, nmax);
        if (j >= 0) {
            const double J = eff.J[std::min(a, 1)][std::min(b - 1, 1)];
            H(i, j) = H(j, i) = std::sqrt((a + 1.0) * b) * J;
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(H);
    const Eigen::MatrixXd P = es.eigenvectors().cwiseAbs2();
    // label by maximum overlap (greedy bijection)
    struct Entry { double p; int b, e; };
    std::vector<Entry> flat;
    for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) flat.push_back({P(b, e), b, e});
    std::sort(flat.begin(), flat.end(), [](const Entry& x, const Entry& y) {
        if (x.p != y.p) return x.p > y.p;
        if (x.b != y.b) return x.b < y.b;
        return x.e < y.e;
    });
    std::vector<int> of_basis(n, -1);
    std::vector<char> used(n, 0);
    int placed = 0;
    for (const auto& en : flat) {
        if (of_basis[en.b] != -1 || used[en.e]) continue;
        of_basis[en.b] = en.e;
        used[en.e] = 1;
        if (++placed == n) break;
    }
    Matrix V(n, n);
    im.energies.resize(n);
    for (int b = 0; b < n; ++b) {
        im.energies(b) = es.eigenvalues()(of_basis[b]);
        Eigen::VectorXd col = es.eigenvectors().col(of_basis[b]);
        int imax = 0;
        col.cwiseAbs().maxCoeff(&imax);
        if (col(imax) < 0.0) col = -col;  // gauge: dominant component positive
        V.col(b) = col.cast<Complex>();
    }
    im.ntot.resize(n);
    for (int i = 0; i < n; ++i) im.ntot[i] = basis.states[i][0] + basis.states[i][1];

    RealMatrix ladc = RealMatrix::Zero(n, n), ladt = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = basis.states[i];
        int j = basis.find(a + 1, b, nmax);
        if (j >= 0) { ladc(i, j) += std::sqrt(a + 1.0); ladc(j, i) += std::sqrt(a + 1.0); }
        j = basis.find(a, b + 1, nmax);
        if (j >= 0) { ladt(i, j) += std::sqrt(b + 1.0); ladt(j, i) += std::sqrt(b + 1.0); }
    }
    im.drive_ctl = V.adjoint() * ladc.cast<Complex>() * V;
    im.drive_tgt = V.adjoint() * ladt.cast<Complex>() * V;
    im.comp = {0, 1, 2, 3};
    im.eff = eff;
    im.has_eff = true;
}

void build_full_engine(CrEngine::Impl& im, const DeviceSpec& device) {
    const auto H = build_static(device);
    const auto ds = diagonalize_labeled(H);
    const int n = H.dim();
    const int ic = device.index_of(im.drive.control);
    int it = -1;
    if (im.drive.crosstalk_target) it = device.index_of(*im.drive.crosstalk_target);
    else {
        for (int qi : device.qubit_indices())
            if (qi != ic) it = qi;
    }
    if (it < 0) throw ConfigError("cr: cannot identify the target qubit");

    im.energies.resize(n);
    im.ntot.resize(n);
    for (int i = 0; i < n; ++i) {
        im.energies(i) = ds.energies[i];
        im.ntot[i] = H.total_excitation(i);
    }
    const auto ladder_x = [&](int which) {
        const Matrix a = lowering(device.subsystems[which].dim).cast<Complex>();
        return embed(H.dims, which, Matrix(a + a.adjoint()));
    };
    im.drive_ctl = ds.vectors.adjoint() * ladder_x(ic) * ds.vectors;
    im.drive_tgt = ds.vectors.adjoint() * ladder_x(it) * ds.vectors;
    im.comp.clear();
    for (int l1 = 0; l1 < 2; ++l1) {
        for (int l2 = 0; l2 < 2; ++l2) {
            BareLabel lab(H.dims.size(), 0);
            lab[ic] = l1;
            lab[it] = l2;
            im.comp.push_back(H.index_of(lab));
        }
    }
    // dressed target frequency = E(target=1) - E(0)
    if (!im.opts.omega_d) {
        BareLabel lab(H.dims.size(), 0);
        lab[it] = 1;
        im.drive.omega_d = ds.energies[H.index_of(lab)] - ds.energies[H.index_of(BareLabel(H.dims.size(), 0))];
    }
}

CrCoefficients coefficients_from_rotated(const Matrix& Hr, const std::vector<int>& comp,
                                         double omega_d) {
    const int n = static_cast<int>(Hr.rows());
    std::vector<int> rest;
    {
        std::vector<char> is_comp(n, 0);
        for (int i : comp) is_comp[i] = 1;
        for (int i = 0; i < n; ++i)
            if (!is_comp[i]) rest.push_back(i);
    }
    const auto bd = least_action_blockdiag(Hr, {comp, rest});
    Matrix H4(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) H4(r, c) = bd.H_BD(comp[r], comp[c]);
    // split into control sectors {00,01} vs {10,11}
    const auto bd2 = least_action_blockdiag(H4, {{0, 1}, {2, 3}});
    CrCoefficients out;
    out.paulis = pauli_decompose(bd2.H_BD);
    out.omega_d = omega_d;
    out.quality = std::min(bd.min_block_support, bd2.min_block_support);
    out.flagged = out.quality < kFlagThreshold;
    return out;
}

}  // namespace

CrEngine::CrEngine(const DeviceSpec& device, const DriveSpec& drive, const CrOptions& opts) {
    impl_ = std::make_shared<Impl>();
    impl_->opts = opts;
    impl_->drive = drive;
    if (opts.model == CrModel::Effective) {
        auto eff = sw_effective(device);
        // order the pair as (control, target)
        const auto q = device.qubit_indices();
        if (q.size() != 2) throw ConfigError("cr effective model: exactly two qubits required");
        const int ic = device.index_of(drive.control);
        if (ic == q[1]) {
            std::swap(eff.omega1_bar, eff.omega2_bar);
            std::swap(eff.delta1_bar, eff.delta2_bar);
            std::swap(eff.J[0][1], eff.J[1][0]);
        } else if (ic != q[0]) {
            throw ConfigError("cr: control must be a qubit");
        }
        build_effective_engine(*impl_, eff);
        impl_->drive.omega_d = impl_->energies(1) - impl_->energies(0);  // dressed (0,1)
    } else {
        build_full_engine(*impl_, device);
        if (!opts.omega_d && impl_->drive.omega_d == 0.0)
            throw ConfigError("cr full model: drive frequency not set");
        impl_->has_eff = false;
        // keep the SW parameters around when the reduction applies (for eta)
        try {
            impl_->eff = sw_effective(device);
            const int ic = device.index_of(drive.control);
            const auto q = device.qubit_indices();
            if (q.size() == 2 && ic == q[1]) {
                std::swap(impl_->eff.omega1_bar, impl_->eff.omega2_bar);
                std::swap(impl_->eff.delta1_bar, impl_->eff.delta2_bar);
                std::swap(impl_->eff.J[0][1], impl_->eff.J[1][0]);
            }
            impl_->has_eff = true;
        } catch (const std::exception&) {
        }
    }
    if (opts.omega_d) impl_->drive.omega_d = *opts.omega_d;
    omega_d_ = impl_->drive.omega_d;
}

CrCoefficients CrEngine::at(double Omega) const {
    return at(Omega, impl_->opts.cancel_A, impl_->opts.cancel_phi);
}

CrCoefficients CrEngine::at(double Omega, double cancel_A, double cancel_phi) const {
    const Matrix Hr = impl_->rotated(Omega, cancel_A, cancel_phi, omega_d_);
    return coefficients_from_rotated(Hr, impl_->comp, omega_d_);
}

double CrEngine::static_zz() const { return at(0.0, 0.0, 0.0).paulis.get("ZZ"); }

const EffectiveTwoQubit& CrEngine::effective() const {
    if (!impl_->has_eff) throw DomainError("cr: no effective two-qubit reduction for this device");
    return impl_->eff;
}

CrCoefficients cr_pauli_coefficients(const DeviceSpec& device, const DriveSpec& drive,
                                     const CrOptions& opts) {
    return CrEngine(device, drive, opts).at(drive.Omega);
}

EtaReport dynamical_eta(const EtaParams& p) {
    EtaReport out;
    const double r = p.delta1 / p.delta2;
    const double g = p.J10 / p.J01;
    out.r = r;
    out.gamma = g;
    out.A[0] = 2 * r * r * r * (r + 2 * g + g * g);
    out.A[1] = r * r * (1 + 4 * r * r - 16 * g - 6 * g * g + 2 * r * (2 * g * g + 4 * g - 5));
    out.A[2] = r * (r * r * r + 22 * g - 2 + r * (19 - 32 * g - 12 * g * g) +
                    2 * r * r * (g * g + 2 * g - 10));
    out.A[3] = 1 - 5 * r * r * r - 10 * g + 9 * g * g + r * (44 * g - 15) -
               2 * r * r * (3 * g * g + 8 * g - 18);
    out.A[4] = 4 + 9 * r * r - 20 * g + 18 * g * g + r * (22 * g - 27);
    out.A[5] = 7 - 7 * r - 10 * g + 9 * g * g;
    out.A[6] = 2.0;
    const double D = p.Delta, d2 = p.delta2;
    for (double pole : {-d2, 0.0, r * d2 / 2.0, r * d2})
        if (std::abs(D - pole) < 0.010) out.near_pole = true;
    double num = 0.0;
    for (int i = 0; i <= 6; ++i) num += out.A[i] * std::pow(D, i) * std::pow(d2, 6 - i);
    const double den = 2 * D * D * d2 * std::pow(D + d2, 2) * std::pow(D - r * d2, 3) *
                       (2 * D - r * d2);
    out.eta = p.J01 * p.J01 * num / den;
    return out;
}

namespace {

std::optional<double> la_root(const CrEngine& engine, double omega_max, double step,
                              double residual_tol) {
    double prev_om = 1e-7;
    double prev = engine.at(prev_om).paulis.get("ZZ");
    for (double om = step; om <= omega_max + 1e-12; om += step) {
        const double z = engine.at(om).paulis.get("ZZ");
        if ((z > 0.0) != (prev > 0.0)) {
            double a = prev_om, b = om, fa = prev;
            for (int i = 0; i < 45; ++i) {
                const double m = 0.5 * (a + b);
                const double fm = engine.at(m).paulis.get("ZZ");
                if ((fm > 0.0) == (fa > 0.0)) { a = m; fa = fm; }
                else b = m;
            }
            const double root = 0.5 * (a + b);
            const auto at_root = engine.at(root);
            if (std::abs(at_root.paulis.get("ZZ")) < residual_tol && !at_root.flagged)
                return root;
            // anti-crossing jump or unreliable blocks: keep scanning
        }
        prev = z;
        prev_om = om;
    }
    return std::nullopt;
}

}  // namespace

CancellationReport cancellation_amplitude(const DeviceSpec& device, const DriveSpec& drive,
                                          const CrOptions& opts, double omega_max,
                                          double grid_step) {
    CrEngine engine(device, drive, opts);
    CancellationReport rep;

    const double zeta = engine.static_zz();
    std::optional<EtaReport> eta;
    try {
        const auto& e = engine.effective();
        eta = dynamical_eta({e.detuning(), e.delta1_bar, e.delta2_bar, e.J[0][1], e.J[1][0]});
    } catch (const std::exception&) {
    }

    auto root = la_root(engine, omega_max, grid_step, 5e-7);
    // a genuine dynamical freedom needs the quadratic part to oppose the
    // static part; a same-sign crossing deep in the strong-drive regime is an
    // artifact of level hybridization
    if (root && eta && !eta->near_pole && std::isfinite(eta->eta) &&
        zeta * eta->eta > 0.0)
        root = std::nullopt;
    rep.omega_star_la = root;

    if (eta && std::isfinite(eta->eta) && zeta * eta->eta < 0.0) {
        const double om = std::sqrt(-zeta / eta->eta);
        if (om <= omega_max) rep.omega_star_on = om;
    }

    if (eta) {
        const double r = eta->r, g = eta->gamma;
        const auto& e = engine.effective();
        const double D = e.detuning(), d2 = e.delta2_bar;
        const double rad1 = 2.0 * (r + g * g) / (r + g * (2.0 + g));
        const double Cnum = 0.5 + 2 * g + g * g + r * r + r * g * (2 + g) +
                            g * g * (1 + 2 * g * g) / (2 * r);
        const double Cden = (r + g * g) * (r + g * (2 + g));
        const double C = Cnum / Cden;
        const double rad2 = 1.0 - C * D / d2;
        if (rad1 > 0.0 && rad2 > 0.0) {
            const double om = std::abs(D) * std::sqrt(rad1) * std::sqrt(rad2);
            if (om <= omega_max) rep.omega_star_closed = om;
        }
    }
    return rep;
}

double echoed_cr_rate(const PauliCoefficients& c) {
    const double zx = c.get("ZX"), zy = c.get("ZY"), ix = c.get("IX"), iy = c.get("IY");
    const double zz2 = c.get("ZZ") / 2.0;
    return std::sqrt((zx + ix) * (zx + ix) + (zy + iy) * (zy + iy) + zz2 * zz2) +
           std::sqrt((zx - ix) * (zx - ix) + (zy - iy) * (zy - iy) + zz2 * zz2);
}

Zx90Calibration calibrate_zx90(const CrEngine& engine, double tau_ns, double omega_max) {
    if (tau_ns <= 0.0) throw DomainError("calibrate_zx90: tau must be positive");
    const double target = 1.0 / (4.0 * tau_ns);  // (2 pi f_ECR) tau = pi/2
    const auto rate = [&](double om) { return echoed_cr_rate(engine.at(om).paulis); };
    // scan for the first bracket; f_ECR is monotone until saturation
    double max_rate = 0.0, max_zx = 0.0;
    double lo = 0.0, hi = -1.0, prev_rate = 0.0;
    const double step = 0.002;
    for (double om = step; om <= omega_max + 1e-12; om += step) {
        const double f = rate(om);
        if (f >= target) { lo = om - step; hi = om; break; }
        if (f < prev_rate) break;  // saturated
        prev_rate = f;
        max_rate = f;
        max_zx = std::abs(engine.at(om).paulis.get("ZX"));
    }
    if (hi < 0.0) {
        const double tg_min = 1.0 / (4.0 * max_zx) + 80.0;
        throw DomainError("calibrate_zx90: required rate exceeds the saturated maximum (" +
                          std::to_string(max_rate) + " GHz); minimum gate length ~" +
                          std::to_string(tg_min) + " ns");
    }
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (lo + hi);
        if (rate(m) < target) lo = m;
        else hi = m;
    }
    Zx90Calibration out;
    out.Omega = 0.5 * (lo + hi);
    out.f_ecr = rate(out.Omega);
    out.alpha_zx = engine.at(out.Omega).paulis.get("ZX");
    return out;
}

ActiveCancellation active_cancellation(const CrEngine& engine, double Omega) {
    // solve beta_IX(z) = beta_IY(z) = 0 for the complex tone z = A e^{i phi}
    double zr = 0.0, zi = 0.0;
    const auto eval = [&](double ar, double ai, double* ix, double* iy) {
        const double A = std::hypot(ar, ai);
        const double phi = (A == 0.0) ? 0.0 : std::atan2(ai, ar);
        const auto co = engine.at(Omega, A, phi);
        *ix = co.paulis.get("IX");
        *iy = co.paulis.get("IY");
    };
    double fx, fy;
    eval(zr, zi, &fx, &fy);
    ActiveCancellation out;
    const double h = 1e-6;
    for (int iter = 0; iter < 50; ++iter) {
        out.residual = std::hypot(fx, fy);
        if (out.residual < 1e-9) {
            out.converged = true;
            break;
        }
        double fx1, fy1, fx2, fy2;
        eval(zr + h, zi, &fx1, &fy1);
        eval(zr, zi + h, &fx2, &fy2);
        const double j11 = (fx1 - fx) / h, j12 = (fx2 - fx) / h;
        const double j21 = (fy1 - fy) / h, j22 = (fy2 - fy) / h;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-18) break;
        zr -= (j22 * fx - j12 * fy) / det;
        zi -= (-j21 * fx + j11 * fy) / det;
        eval(zr, zi, &fx, &fy);
    }
    out.A = std::hypot(zr, zi);
    out.phi = (out.A == 0.0) ? 0.0 : std::atan2(zi, zr);
    if (out.phi < 0.0) out.phi += 2.0 * kPi;
    return out;
}

}  // namespace zzfree
