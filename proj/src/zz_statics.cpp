#include "zzfree/zz_statics.hpp"

#include <cmath>

#include "zzfree/errors.hpp"

namespace zzfree {

double static_zz_exact(const DeviceSpec& device) {
    const auto q = device.qubit_indices();
    if (q.size() != 2) throw ConfigError("static_zz_exact: exactly two qubits required");
    const auto H = build_static(device);
    const auto ds = diagonalize_labeled(H);
    const size_t K = device.subsystems.size();
    BareLabel l00(K, 0), l10(K, 0), l01(K, 0), l11(K, 0);
    l10[q[0]] = 1;
    l01[q[1]] = 1;
    l11[q[0]] = 1;
    l11[q[1]] = 1;
    return ds.energy_of(l11) + ds.energy_of(l00) - ds.energy_of(l10) - ds.energy_of(l01);
}

double static_zz_sw(const EffectiveTwoQubit& eff) {
    const double D = eff.detuning();
    const double d1 = eff.delta1_bar, d2 = eff.delta2_bar;
    const double Jmax = std::max(std::abs(eff.J[1][0]), std::abs(eff.J[0][1]));
    if (std::abs(D - d1) < 5.0 * Jmax || std::abs(D + d2) < 5.0 * Jmax)
        throw DomainError("static_zz_sw: too close to a perturbative pole");
    return 2.0 * eff.J[1][0] * eff.J[1][0] / (D - d1) -
           2.0 * eff.J[0][1] * eff.J[0][1] / (D + d2);
}

FreedomCondition zz_freedom_condition(const EffectiveTwoQubit& eff) {
    FreedomCondition out;
    if (eff.J[0][1] == 0.0) throw DomainError("zz_freedom_condition: J01 = 0");
    out.gamma = eff.gamma();
    const double g2 = out.gamma * out.gamma;
    if (std::abs(1.0 - g2) < 1e-12) throw DomainError("zz_freedom_condition: gamma^2 = 1, no finite solution");
    out.delta_bar_required = (eff.delta1_bar + eff.delta2_bar * g2) / (1.0 - g2);
    return out;
}

Pt4Report static_zz_pt4(const TunableCouplerParams& p) {
    const double D12 = p.omega1 - p.omega2;
    const double D1c = p.omega1 - p.omega_c;
    const double D2c = p.omega2 - p.omega_c;
    Pt4Report r;
    r.zeta2 = 2.0 * p.g12 * p.g12 * (1.0 / (D12 - p.delta2) - 1.0 / (D12 + p.delta1));
    r.zeta3 = 2.0 * p.g1c * p.g2c * p.g12 *
              (2.0 / ((D12 - p.delta2) * D1c) - 2.0 / ((D12 + p.delta1) * D2c) +
               1.0 / (D1c * D2c) + 1.0 / (D12 * D2c) - 1.0 / (D12 * D1c));
    const double q = 1.0 / D1c + 1.0 / D2c;
    r.zeta4 = p.g1c * p.g1c * p.g2c * p.g2c *
              (2.0 * q * q / (D1c + D2c - p.delta_c) -
               2.0 / (D2c * D2c * (D12 + p.delta1)) + 2.0 / (D1c * D1c * (D12 - p.delta2)) -
               (1.0 / D2c + 1.0 / D12) / (D1c * D1c) - (1.0 / D1c - 1.0 / D12) / (D2c * D2c));
    r.zeta = r.zeta2 + r.zeta3 + r.zeta4;
    return r;
}

std::vector<double> find_zero(const std::function<double(double)>& evaluator, double lo,
                              double hi, int grid, double tol) {
    if (grid < 2) grid = 2;
    std::vector<double> roots;
    double xprev = lo, fprev = evaluator(lo);
    for (int i = 1; i <= grid; ++i) {
        const double x = lo + (hi - lo) * i / grid;
        const double f = evaluator(x);
        if (f == 0.0) {
            roots.push_back(x);
        } else if (fprev != 0.0 && (f > 0.0) != (fprev > 0.0)) {
            double a = xprev, b = x, fa = fprev;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                const double fm = evaluator(m);
                if (fm == 0.0) { a = b = m; break; }
                if ((fm > 0.0) == (fa > 0.0)) { a = m; fa = fm; }
                else b = m;
            }
            roots.push_back(0.5 * (a + b));
        }
        xprev = x;
        fprev = f;
    }
    return roots;
}

}  // namespace zzfree
