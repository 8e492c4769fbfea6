#include "zzfree/spectra.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zzfree {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ResonatorParams::frequency() const {
    if (omega_r > 0.0) return omega_r;
    if (L <= 0.0 || C <= 0.0) throw std::invalid_argument("resonator needs omega_r or L and C");
    // L in nH, C in fF: 1/sqrt(LC) in rad/ns -> linear GHz
    return 1.0 / (2.0 * kPi * std::sqrt(L * C * 1e-6));
}

LevelLadder transmon_charge_spectrum(const TransmonParams& p, int k) {
    if (p.EC <= 0.0 || p.EJ < 0.0) throw std::invalid_argument("transmon: EC > 0, EJ >= 0 required");
    if (k < 1) throw std::invalid_argument("transmon: need k >= 1");
    int ncut = std::max(p.ncut, 10);
    std::vector<double> prev;
    for (int iter = 0; iter < 12; ++iter) {
        const int dim = 2 * ncut + 1;
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            const double n = i - ncut;
            H(i, i) = 4.0 * p.EC * (n - p.ng) * (n - p.ng);
            if (i + 1 < dim) H(i, i + 1) = H(i + 1, i) = -p.EJ / 2.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
        std::vector<double> lv(k);
        for (int i = 0; i < k; ++i) lv[i] = es.eigenvalues()(i) - es.eigenvalues()(0);
        if (!prev.empty() && std::abs(lv.back() - prev.back()) < 1e-9) return LevelLadder{lv};
        prev = std::move(lv);
        ncut *= 2;
    }
    throw std::runtime_error("transmon charge spectrum did not converge under cutoff doubling");
}

LevelLadder duffing_ladder(const DuffingParams& p) {
    if (p.nlevels < 2) throw std::invalid_argument("duffing: nlevels >= 2 required");
    if (p.omega <= 0.0) throw std::invalid_argument("duffing: omega > 0 required");
    std::vector<double> e(p.nlevels);
    for (int n = 0; n < p.nlevels; ++n) e[n] = p.omega * n + p.delta / 2.0 * n * (n - 1);
    return LevelLadder{std::move(e)};
}

namespace {

// CSFQ potential in the full-angle variable (phase across the alpha junction):
// U(phi) = -2 EJ cos(phi/2) - alpha EJ cos(2 pi f - phi). See sfig1 for the
// xi-scan this feeds.
struct CsfqPotential {
    double EJ, alpha, f;

    double d1(double phi) const {
        return EJ * std::sin(phi / 2.0) - alpha * EJ * std::sin(2.0 * kPi * f - phi);
    }
    double d2(double phi) const {
        return EJ / 2.0 * std::cos(phi / 2.0) + alpha * EJ * std::cos(2.0 * kPi * f - phi);
    }
    // k-th derivative at phi0, k >= 1
    double deriv(int k, double phi0) const {
        const double u = 2.0 * kPi * f - phi0;
        return -2.0 * EJ * std::pow(0.5, k) * std::cos(phi0 / 2.0 + k * kPi / 2.0)
               - alpha * EJ * std::cos(u - k * kPi / 2.0);
    }
    double minimum(double seed) const {
        double phi = seed;
        for (int i = 0; i < 80; ++i) {
            const double step = d1(phi) / d2(phi);
            phi -= step;
            if (std::abs(step) < 1e-14) return phi;
        }
        throw std::runtime_error("csfq: potential minimum search did not converge");
    }
};

// Fock-basis energies of the expanded potential: unperturbed diagonal plus
// second- and third-order Rayleigh-Schrodinger corrections (per-level).
std::vector<double> csfq_pt_energies(const CsfqParams& p, const CsfqPotential& pot,
                                     double phi0, double xi, int nlev, int nbasis) {
    const int N = nbasis;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) A(i, i + 1) = std::sqrt(i + 1.0);
    const Eigen::MatrixXd Ad = A.transpose();
    const Eigen::MatrixXd X = A - Ad;
    Eigen::MatrixXd H = -(p.EC / (xi * xi)) * (X * X);
    const Eigen::MatrixXd phi = xi * (A + Ad);
    Eigen::MatrixXd phip = Eigen::MatrixXd::Identity(N, N);
    double fact = 1.0;
    for (int k = 1; k <= 2 * p.L; ++k) {
        phip = phip * phi;
        fact *= k;
        H += pot.deriv(k, phi0) / fact * phip;
    }
    const Eigen::VectorXd E0 = H.diagonal();
    Eigen::MatrixXd V = H;
    V.diagonal().setZero();
    std::vector<double> out(nlev);
    for (int n = 0; n < nlev; ++n) {
        Eigen::VectorXd invd(N);
        for (int m = 0; m < N; ++m) invd(m) = (m == n) ? 0.0 : 1.0 / (E0(n) - E0(m));
        const Eigen::VectorXd M = V.row(n).transpose().cwiseProduct(invd);
        const double e2 = V.row(n).transpose().cwiseProduct(M).sum();
        const double e3 = M.dot(V * M);
        out[n] = E0(n) + e2 + e3;
    }
    return out;
}

}  // namespace

LevelLadder csfq_ladder(const CsfqParams& p, int k) {
    if (!(p.alpha > 0.0 && p.alpha < 0.5)) throw std::invalid_argument("csfq: 0 < alpha < 1/2 required");
    if (p.f < 0.0 || p.f > 1.0) throw std::invalid_argument("csfq: 0 <= f <= 1 required");
    const CsfqPotential pot{p.EJ, p.alpha, p.f};
    const double df = p.f - 0.5;
    const double seed = -4.0 * kPi * df * p.alpha / (1.0 - 2.0 * p.alpha);
    const double phi0 = pot.minimum(seed);
    const double EJeff = pot.d2(phi0);
    if (EJeff <= 0.0) throw std::runtime_error("csfq: no interior potential minimum (outside model validity)");
    const double phizpf = std::pow(8.0 * p.EC / EJeff, 0.25) / std::sqrt(2.0);
    const int nbasis = std::max(40, 8 * k + 4 * p.L);

    const auto f01 = [&](double xi) {
        auto e = csfq_pt_energies(p, pot, phi0, xi, 2, nbasis);
        return e[1] - e[0];
    };
    // golden-section scan of f01(xi) on [0.1, 3] phizpf
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.1 * phizpf, b = 3.0 * phizpf;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f01(c), fd = f01(d);
    for (int i = 0; i < 120 && (b - a) > 1e-10; ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f01(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f01(d);
        }
    }
    const double xi = 0.5 * (a + b);
    if (xi < 0.1 * phizpf + 1e-6 || xi > 3.0 * phizpf - 1e-6)
        throw std::runtime_error("csfq: xi scan found no interior minimum");
    auto e = csfq_pt_energies(p, pot, phi0, xi, k, nbasis);
    std::vector<double> lv(k);
    for (int i = 0; i < k; ++i) lv[i] = e[i] - e[0];
    return LevelLadder{std::move(lv)};
}

CsfqSpectrum csfq_spectrum(const CsfqParams& p) {
    const auto lad = csfq_ladder(p, 3);
    const CsfqPotential pot{p.EJ, p.alpha, p.f};
    const double df = p.f - 0.5;
    const double phi0 = pot.minimum(-4.0 * kPi * df * p.alpha / (1.0 - 2.0 * p.alpha));
    CsfqSpectrum s;
    s.omega01 = lad.omega01();
    s.delta = lad.anharmonicity();
    s.phi0 = phi0;
    s.xi = 0.0;  // informational only when coming through the ladder path
    return s;
}

TunableTransmonSpectrum tunable_transmon_freq(const TunableTransmonParams& p) {
    if (p.d < 0.0 || p.d >= 1.0) throw std::invalid_argument("tunable transmon: 0 <= d < 1 required");
    const double c = std::cos(kPi * p.f), s = std::sin(kPi * p.f);
    const double EJf = p.EJsum * std::sqrt(c * c + p.d * p.d * s * s);
    TunableTransmonSpectrum out;
    out.delta = -p.EC;
    out.omega01 = std::sqrt(8.0 * p.EC * EJf) + out.delta;
    return out;
}

PairCouplings coupling_from_capacitances(double C1r, double C2r, double C1, double C2,
                                         double Cr, double omega1, double omega2,
                                         double omega_r) {
    if (C1 <= 0.0 || C2 <= 0.0 || Cr <= 0.0) throw std::invalid_argument("capacitances must be positive");
    PairCouplings g;
    g.g_qr = 0.5 * (C1r / std::sqrt(C1 * Cr)) * std::sqrt(omega1 * omega_r);
    g.g_12 = 0.5 * (C1r * C2r / (std::sqrt(C1 * C2) * Cr)) * std::sqrt(omega1 * omega2);
    return g;
}

}  // namespace zzfree
