// Command-line front end: device-file ingestion, named analyses, sweeps,
// CSV/JSON emission. Exit codes: 0 ok, 1 config error, 2 numerical-domain error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "zzfree/config.hpp"
#include "zzfree/errors.hpp"
#include "zzfree/sweep.hpp"
#include "zzfree/three_qubit.hpp"
#include "zzfree/zz_statics.hpp"

using json = nlohmann::json;
using namespace zzfree;

namespace {

struct Emitter {
    std::string format = "csv";
    std::string out_path;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json extra = json::object();

    void emit() const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw ConfigError("cannot open output file: " + out_path);
            os = &file;
        }
        if (format == "csv") {
            for (size_t i = 0; i < columns.size(); ++i)
                *os << (i ? "," : "") << columns[i];
            *os << "\n";
            for (const auto& r : rows) {
                for (size_t i = 0; i < r.size(); ++i)
                    *os << (i ? "," : "") << format_number(r[i]);
                *os << "\n";
            }
            for (const auto& [key, val] : extra.items()) {
                *os << "# " << key << ",";
                if (val.is_array()) {
                    for (size_t i = 0; i < val.size(); ++i)
                        *os << (i ? "," : "") << (val[i].is_number() ? format_number(val[i].get<double>())
                                                                     : val[i].dump());
                } else if (val.is_number()) {
                    *os << format_number(val.get<double>());
                } else {
                    *os << val.dump();
                }
                *os << "\n";
            }
        } else {
            json doc;
            doc["columns"] = columns;
            json jr = json::array();
            for (const auto& r : rows) {
                json obj;
                for (size_t i = 0; i < r.size(); ++i) obj[columns[i]] = r[i];
                jr.push_back(obj);
            }
            doc["rows"] = jr;
            for (const auto& [key, val] : extra.items()) doc[key] = val;
            *os << doc.dump(2) << "\n";
        }
    }
};

std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> xs(s.points);
    for (int i = 0; i < s.points; ++i)
        xs[i] = s.start + (s.stop - s.start) * i / (s.points - 1);
    return xs;
}

CrOptions cr_options(const DeviceFile& f) {
    CrOptions o;
    o.model = f.cr_model();
    return o;
}

void cmd_spectrum(const DeviceFile& f, Emitter& em) {
    em.columns = {"index", "omega01_GHz", "delta_GHz"};
    json ladders = json::array();
    json ids = json::array();
    for (size_t i = 0; i < f.device.subsystems.size(); ++i) {
        const auto& s = f.device.subsystems[i];
        const auto lad = s.ladder();
        const double delta = s.dim > 2 ? lad.anharmonicity() : 0.0;
        em.rows.push_back({static_cast<double>(i), lad.omega01(), delta});
        ids.push_back(s.id);
        json lv = json::array();
        for (double e : lad.energies) lv.push_back(e);
        ladders.push_back(lv);
    }
    em.extra["ids"] = ids;
    em.extra["ladders"] = ladders;
}

void cmd_static_zz(const DeviceFile& f, const std::optional<SweepSpec>& sweep, int jobs,
                   Emitter& em) {
    const auto one = [&](const DeviceFile& df) {
        std::vector<double> row;
        row.push_back(static_zz_exact(df.device));
        double zsw = std::numeric_limits<double>::quiet_NaN();
        double zpt4 = std::numeric_limits<double>::quiet_NaN();
        try {
            zsw = static_zz_sw(sw_effective(df.device));
        } catch (const std::exception&) {
        }
        const auto q = df.device.qubit_indices();
        const auto c = df.device.coupler_indices();
        if (q.size() == 2 && c.size() == 1) {
            TunableCouplerParams p;
            const auto l1 = df.device.subsystems[q[0]].ladder();
            const auto l2 = df.device.subsystems[q[1]].ladder();
            const auto lc = df.device.subsystems[c[0]].ladder();
            p.omega1 = l1.omega01();
            p.delta1 = l1.anharmonicity();
            p.omega2 = l2.omega01();
            p.delta2 = l2.anharmonicity();
            p.omega_c = lc.omega01();
            p.delta_c = lc.levels() > 2 ? lc.anharmonicity() : 0.0;
            const auto& id1 = df.device.subsystems[q[0]].id;
            const auto& id2 = df.device.subsystems[q[1]].id;
            const auto& idc = df.device.subsystems[c[0]].id;
            for (const auto& cp : df.device.couplings) {
                if ((cp.i == id1 && cp.j == idc) || (cp.i == idc && cp.j == id1)) p.g1c = cp.g;
                if ((cp.i == id2 && cp.j == idc) || (cp.i == idc && cp.j == id2)) p.g2c = cp.g;
                if ((cp.i == id1 && cp.j == id2) || (cp.i == id2 && cp.j == id1)) p.g12 = cp.g;
            }
            zpt4 = static_zz_pt4(p).zeta;
        }
        row.push_back(zsw);
        row.push_back(zpt4);
        return row;
    };
    if (!sweep) {
        em.columns = {"zeta_exact_GHz", "zeta_sw_GHz", "zeta_pt4_GHz"};
        em.rows.push_back(one(f));
        return;
    }
    em.columns = {"param", "zeta_exact_GHz", "zeta_sw_GHz", "zeta_pt4_GHz"};
    const auto xs = sweep_values(*sweep);
    const auto rows = parallel_map<std::vector<double>>(
        static_cast<int>(xs.size()), jobs, [&](int i) {
            auto row = one(f.with_param(sweep->param, xs[i]));
            row.insert(row.begin(), xs[i]);
            return row;
        });
    em.rows = rows;
    // refine roots of zeta_exact over the sweep range
    const auto roots = find_zero(
        [&](double x) { return static_zz_exact(f.with_param(sweep->param, x).device); },
        sweep->start, sweep->stop, std::max(64, sweep->points), 1e-6);
    em.extra["roots_zeta_exact"] = roots;
}

void cmd_cr(const DeviceFile& f, const std::optional<SweepSpec>& sweep, int jobs, Emitter& em) {
    const DriveSpec drive = f.default_drive();
    const CrOptions opts = cr_options(f);
    CrEngine engine(f.device, drive, opts);
    em.columns = {"Omega_GHz", "beta_ZI", "beta_IZ", "beta_ZX", "beta_ZY",
                  "beta_IX", "beta_IY", "beta_ZZ", "f_ECR_GHz", "flagged"};
    std::vector<double> omegas;
    if (sweep && sweep->param == "Omega") {
        omegas = sweep_values(*sweep);
    } else if (drive.Omega > 0.0) {
        omegas = {drive.Omega};
    } else {
        for (int i = 0; i <= 40; ++i) omegas.push_back(f.cr.omega_max * i / 40.0);
    }
    em.rows = parallel_map<std::vector<double>>(
        static_cast<int>(omegas.size()), jobs, [&](int i) {
            const auto co = engine.at(omegas[i]);
            const auto& p = co.paulis;
            return std::vector<double>{omegas[i], p.get("ZI"), p.get("IZ"), p.get("ZX"),
                                       p.get("ZY"), p.get("IX"), p.get("IY"), p.get("ZZ"),
                                       echoed_cr_rate(p), co.flagged ? 1.0 : 0.0};
        });
    const auto rep = cancellation_amplitude(f.device, drive, opts, f.cr.omega_max);
    const auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) em.extra[key] = *v;
        else em.extra[key] = "none";
    };
    put("omega_star_la", rep.omega_star_la);
    put("omega_star_on", rep.omega_star_on);
    put("omega_star_closed", rep.omega_star_closed);
}

double crosstalk_R(const DeviceFile& f, double flux, double tau_ns) {
    if (!f.noise.crosstalk) return 0.0;
    const auto& m = *f.noise.crosstalk;
    const double tau_us = 2.0 * tau_ns / 1000.0;  // both CR segments
    const double base = m.base - m.scale * std::pow(std::abs(flux - 0.5), m.power);
    return std::max(0.0, base) * std::pow(tau_us, m.tau_power);
}

CoherenceTimes flux_adjusted_t2(const DeviceFile& f, const std::string& id, double flux) {
    CoherenceTimes ct = f.noise.coherence(id);
    if (!f.noise.flux_dephasing || !f.noise.flux_qubit || *f.noise.flux_qubit != id || ct.T1 <= 0.0)
        return ct;
    // D_phi from a central difference of the qubit frequency
    const auto& sub = f.device.subsystem(id);
    if (sub.kind != SubsystemKind::Csfq) return ct;
    auto p = std::get<CsfqParams>(sub.params);
    const double h = 5e-4;
    p.f = flux + h;
    const double wplus = csfq_ladder(p, 2).omega01();
    p.f = flux - h;
    const double wminus = csfq_ladder(p, 2).omega01();
    const double D = std::abs(wplus - wminus) / (2.0 * h);
    const double gamma_phi = flux_dephasing_rate(D, *f.noise.flux_dephasing);
    ct.T2 = 1.0 / (0.5 / ct.T1 + gamma_phi);
    return ct;
}

void gate_error_row(const DeviceFile& f, double flux_or_tg, bool flux_scan, double tg_fixed,
                    std::vector<double>& row) {
    DeviceFile df = f;
    double tg = flux_or_tg;
    double flux = 0.5;
    if (flux_scan) {
        flux = flux_or_tg;
        tg = tg_fixed;
        const auto& id = *f.noise.flux_qubit;
        df = f.with_param("subsystems." + id + ".params.f", flux);
    }
    const double tau = (tg - f.cr.pi_pulse_ns) / 2.0;
    if (tau <= 0.0) throw DomainError("gate-error: gate shorter than the pi-pulse overhead");
    DriveSpec drive = df.default_drive();
    drive.R = flux_scan ? crosstalk_R(f, flux, tau) : drive.R;
    const CrOptions opts = cr_options(df);
    CrEngine engine(df.device, drive, opts);
    const auto cal = calibrate_zx90(engine, tau, f.cr.omega_max);
    const auto plus = engine.at(cal.Omega);
    const auto minus = engine.at(-cal.Omega);
    const double alpha_zz = plus.paulis.get("ZZ");

    const auto q = df.device.qubit_indices();
    const auto& id1 = df.device.subsystems[q[0]].id;
    const auto& id2 = df.device.subsystems[q[1]].id;
    CoherenceTimes ct1 = flux_adjusted_t2(df, id1, flux);
    CoherenceTimes ct2 = flux_adjusted_t2(df, id2, flux);

    PauliCoefficients p = plus.paulis, m = minus.paulis;
    if (!flux_scan) {
        // active cancellation assumed: only ZI/ZX survive in the segments
        for (auto* c : {&p, &m})
            for (auto& [lab, val] : c->values)
                if (lab != "ZI" && lab != "ZX" && lab != "ZZ" && lab != "II") val = 0.0;
    }
    const auto res = echoed_cr_error(p, m, alpha_zz, ct1, ct2, tau, tg);
    const auto coh = echoed_cr_error(
        [&] {
            PauliCoefficients zx;
            zx.nqubits = 2;
            zx.values["ZX"] = p.get("ZX");
            return zx;
        }(),
        [&] {
            PauliCoefficients zx;
            zx.nqubits = 2;
            zx.values["ZX"] = m.get("ZX");
            return zx;
        }(),
        0.0, ct1, ct2, tau, tg);
    row = {flux_scan ? flux : tg, res.fidelity, res.error, coh.error, cal.Omega, alpha_zz};
}

void cmd_gate_error(const DeviceFile& f, const std::optional<SweepSpec>& sweep, double tg,
                    int jobs, Emitter& em) {
    if (!sweep) throw ConfigError("gate-error requires --sweep tg=...:...:N or flux=...:...:N");
    const bool flux_scan = sweep->param == "flux";
    if (!flux_scan && sweep->param != "tg")
        throw ConfigError("gate-error sweep parameter must be 'tg' or 'flux'");
    if (flux_scan && !f.noise.flux_qubit)
        throw ConfigError("flux scan requires noise.flux_dephasing.subsystem");
    em.columns = {flux_scan ? "flux" : "tg_ns", "F", "error", "coherence_limit_error",
                  "Omega_GHz", "alpha_ZZ_GHz"};
    const auto xs = sweep_values(*sweep);
    em.rows = parallel_map<std::vector<double>>(
        static_cast<int>(xs.size()), jobs, [&](int i) {
            std::vector<double> row;
            gate_error_row(f, xs[i], flux_scan, tg, row);
            return row;
        });
}

void cmd_three_qubit(const DeviceFile& f, const std::string& method, Emitter& em) {
    const auto dev = ThreeQubitDevice::from_device(f.device);
    em.columns = {"method_index", "value_GHz"};
    em.rows.clear();
    json names = json::array(), labels = json::array();
    const std::vector<std::string> order = {"ZII", "IZI", "IIZ", "ZZI", "ZIZ", "IZZ", "ZZZ"};
    std::vector<ThreeQubitMethod> methods;
    if (method == "all") {
        for (auto m : {ThreeQubitMethod::RwaPt, ThreeQubitMethod::RwaSsw, ThreeQubitMethod::RwaSw,
                       ThreeQubitMethod::NrwaPt, ThreeQubitMethod::NrwaSsw, ThreeQubitMethod::NrwaSw})
            methods.push_back(m);
    } else {
        methods.push_back(parse_method(method));
    }
    int mi = 0;
    for (auto m : methods) {
        const auto al = three_q_pauli(dev, m);
        for (const auto& lab : order) {
            em.rows.push_back({static_cast<double>(mi), al.get(lab)});
            names.push_back(method_name(m));
            labels.push_back(lab);
        }
        ++mi;
    }
    em.extra["methods"] = names;
    em.extra["labels"] = labels;
}

void cmd_cz(const DeviceFile& f, Emitter& em) {
    if (!f.cz) throw ConfigError("cz command needs a 'cz' section in the device file");
    const auto& z = *f.cz;
    const double tg = cz_phase_gate_length(z.pulse, z.omega1_of_f, z.zz_fit);
    // minimum |gap| between the two configured labels over the omega1 scan
    const auto q = f.device.qubit_indices();
    const std::string tq = f.device.subsystems[q[0]].id;
    const auto gap_at = [&](double w1) {
        const auto df = f.with_param("subsystems." + tq + ".params.omega", w1);
        const auto H = build_static(df.device);
        const auto ds = diagonalize_labeled(H);
        return std::abs(ds.energy_of(z.gap_a) - ds.energy_of(z.gap_b));
    };
    double best_w = z.scan_lo, best_gap = gap_at(z.scan_lo);
    const int grid = 60;
    for (int i = 1; i <= grid; ++i) {
        const double w = z.scan_lo + (z.scan_hi - z.scan_lo) * i / grid;
        const double g = gap_at(w);
        if (g < best_gap) { best_gap = g; best_w = w; }
    }
    {  // golden refinement around the grid minimum
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = std::max(z.scan_lo, best_w - (z.scan_hi - z.scan_lo) / grid);
        double b = std::min(z.scan_hi, best_w + (z.scan_hi - z.scan_lo) / grid);
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = gap_at(c), fd = gap_at(d);
        for (int i = 0; i < 40; ++i) {
            if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = gap_at(c); }
            else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = gap_at(d); }
        }
        best_w = 0.5 * (a + b);
        best_gap = gap_at(best_w);
    }
    // on/off frequencies from the zz fit: zero crossing and the 2 MHz point
    const auto zz = [&](double w1) { return z.zz_fit(w1); };
    const auto off_roots = find_zero(zz, z.scan_lo, z.scan_hi + 0.5, 256, 1e-6);
    const double off = off_roots.empty() ? 0.0 : off_roots.back();
    const auto on_roots = find_zero([&](double w1) { return zz(w1) - 0.002; },
                                    z.scan_lo, z.scan_hi + 0.5, 256, 1e-6);
    const double on = on_roots.empty() ? 0.0 : on_roots.front();
    em.columns = {"tg_ns", "min_gap_GHz", "min_gap_omega1_GHz", "off_omega1_GHz", "on_omega1_GHz"};
    em.rows.push_back({tg, best_gap, best_w, off, on});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zzfree: ZZ interactions and cross-resonance gates in coupled superconducting qubits"};
    app.require_subcommand(1);

    std::string device_path, out_path, format = "csv", sweep_arg, method = "all";
    double tg = 560.0;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;

    const auto add_common = [&](CLI::App* cmd, bool with_sweep = true) {
        cmd->add_option("--device", device_path, "device file (JSON)")->required();
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--jobs", jobs, "worker threads");
        if (with_sweep) cmd->add_option("--sweep", sweep_arg, "param=start:stop:points");
    };

    auto* spectrum = app.add_subcommand("spectrum", "per-element spectra");
    add_common(spectrum, false);
    auto* static_zz = app.add_subcommand("static-zz", "static ZZ, exact and perturbative");
    add_common(static_zz);
    auto* cr = app.add_subcommand("cr", "CR Pauli coefficients and cancellation amplitudes");
    add_common(cr);
    auto* gate_error = app.add_subcommand("gate-error", "echoed-CR gate error scans");
    add_common(gate_error);
    gate_error->add_option("--tg", tg, "gate length for flux scans (ns)");
    auto* three_qubit = app.add_subcommand("three-qubit", "two- and three-body Pauli coefficients");
    add_common(three_qubit, false);
    three_qubit->add_option("--method", method, "RWA-PT|RWA-SSW|RWA-SW|NRWA-PT|NRWA-SSW|NRWA-SW|all");
    auto* cz = app.add_subcommand("cz", "CZ gate length and minimum gap");
    add_common(cz, false);

    CLI11_PARSE(app, argc, argv);

    try {
        DeviceFile f = load_device_file(device_path);
        std::optional<SweepSpec> sweep = f.sweep;
        if (!sweep_arg.empty()) sweep = parse_sweep_arg(sweep_arg);
        Emitter em;
        em.format = format;
        em.out_path = out_path;
        if (app.got_subcommand(spectrum)) cmd_spectrum(f, em);
        else if (app.got_subcommand(static_zz)) cmd_static_zz(f, sweep, jobs, em);
        else if (app.got_subcommand(cr)) cmd_cr(f, sweep, jobs, em);
        else if (app.got_subcommand(gate_error)) cmd_gate_error(f, sweep, tg, jobs, em);
        else if (app.got_subcommand(three_qubit)) cmd_three_qubit(f, method, em);
        else if (app.got_subcommand(cz)) cmd_cz(f, em);
        em.emit();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
