#include "zzfree/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zzfree/errors.hpp"

namespace zzfree {

using nlohmann::json;

namespace {

double need_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError("missing or non-numeric field '" + where + "." + key + "'");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    return (j.contains(key) && j[key].is_number()) ? j[key].get<double>() : fallback;
}

SubsystemKind parse_kind(const std::string& s, const std::string& where) {
    if (s == "transmon") return SubsystemKind::Transmon;
    if (s == "csfq") return SubsystemKind::Csfq;
    if (s == "tunable-transmon") return SubsystemKind::TunableTransmon;
    if (s == "resonator") return SubsystemKind::Resonator;
    if (s == "explicit-ladder") return SubsystemKind::ExplicitLadder;
    throw ConfigError("unknown subsystem kind '" + s + "' at " + where);
}

SubsystemSpec parse_subsystem(const json& j, const std::string& where) {
    SubsystemSpec s;
    if (!j.contains("id") || !j["id"].is_string()) throw ConfigError(where + ": missing 'id'");
    s.id = j["id"].get<std::string>();
    if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError(where + ": missing 'kind'");
    s.kind = parse_kind(j["kind"].get<std::string>(), where);
    const std::string role = j.value("role", s.kind == SubsystemKind::Resonator ? "coupler" : "qubit");
    if (role == "qubit") s.role = SubsystemRole::Qubit;
    else if (role == "coupler") s.role = SubsystemRole::Coupler;
    else throw ConfigError(where + ": role must be 'qubit' or 'coupler'");
    s.dim = static_cast<int>(number_or(j, "dim", 5));
    const json p = j.value("params", json::object());
    const std::string pw = where + ".params";
    switch (s.kind) {
        case SubsystemKind::Transmon: {
            TransmonParams t;
            t.EC = need_number(p, "EC", pw);
            t.EJ = need_number(p, "EJ", pw);
            t.ng = number_or(p, "ng", 0.0);
            t.ncut = static_cast<int>(number_or(p, "ncut", 15));
            s.params = t;
            break;
        }
        case SubsystemKind::Csfq: {
            CsfqParams c;
            c.EC = need_number(p, "EC", pw);
            c.EJ = need_number(p, "EJ", pw);
            c.alpha = need_number(p, "alpha", pw);
            c.f = number_or(p, "f", 0.5);
            c.L = static_cast<int>(number_or(p, "L", 10));
            s.params = c;
            break;
        }
        case SubsystemKind::TunableTransmon: {
            TunableTransmonParams t;
            t.EC = need_number(p, "EC", pw);
            t.EJsum = need_number(p, "EJsum", pw);
            t.d = number_or(p, "d", 0.0);
            t.f = number_or(p, "f", 0.0);
            s.params = t;
            break;
        }
        case SubsystemKind::Resonator: {
            ResonatorParams r;
            r.omega_r = number_or(p, "omega_r", 0.0);
            r.L = number_or(p, "L", 0.0);
            r.C = number_or(p, "C", 0.0);
            s.params = r;
            break;
        }
        case SubsystemKind::ExplicitLadder: {
            ExplicitLadderParams e;
            if (p.contains("energies")) {
                e.energies = p["energies"].get<std::vector<double>>();
            } else {
                e.duffing.omega = need_number(p, "omega", pw);
                e.duffing.delta = number_or(p, "delta", 0.0);
            }
            s.params = e;
            break;
        }
    }
    return s;
}

}  // namespace

CoherenceTimes NoiseConfig::coherence(const std::string& id) const {
    CoherenceTimes ct;
    const auto i1 = T1.find(id);
    const auto i2 = T2.find(id);
    if (i1 != T1.end()) ct.T1 = i1->second;
    if (i2 != T2.end()) ct.T2 = i2->second;
    return ct;
}

CrModel DeviceFile::cr_model() const {
    if (cr.model) return *cr.model;
    const auto q = device.qubit_indices();
    const auto c = device.coupler_indices();
    const bool harmonic = c.size() == 1 &&
                          device.subsystems[c[0]].kind == SubsystemKind::Resonator;
    return (q.size() == 2 && harmonic) ? CrModel::Effective : CrModel::Full;
}

DriveSpec DeviceFile::default_drive() const {
    if (!drives.empty()) return drives.front();
    const auto q = device.qubit_indices();
    if (q.size() < 2) throw ConfigError("no drive defined and fewer than two qubits");
    DriveSpec d;
    d.control = device.subsystems[q[0]].id;
    d.crosstalk_target = device.subsystems[q[1]].id;
    d.phi0 = 3.14159265358979323846;
    return d;
}

namespace {

DeviceFile parse_from_json(json j);

json* resolve_path(json& root, const std::string& path) {
    json* cur = &root;
    std::istringstream ss(path);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (cur->is_array()) {
            bool numeric = !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos;
            if (numeric) {
                const size_t idx = std::stoul(tok);
                if (idx >= cur->size()) return nullptr;
                cur = &(*cur)[idx];
            } else {
                json* hit = nullptr;
                for (auto& el : *cur)
                    if (el.is_object() && el.value("id", "") == tok) hit = &el;
                if (!hit) return nullptr;
                cur = hit;
            }
        } else if (cur->is_object()) {
            if (!cur->contains(tok)) return nullptr;
            cur = &(*cur)[tok];
        } else {
            return nullptr;
        }
    }
    return cur;
}

DeviceFile parse_from_json(json j) {
    DeviceFile f;
    if (!j.contains("subsystems") || !j["subsystems"].is_array() || j["subsystems"].empty())
        throw ConfigError("device file needs a non-empty 'subsystems' array");
    int k = 0;
    for (const auto& js : j["subsystems"])
        f.device.subsystems.push_back(parse_subsystem(js, "subsystems[" + std::to_string(k++) + "]"));
    if (j.contains("couplings")) {
        for (const auto& jc : j["couplings"]) {
            CouplingSpec c;
            c.i = jc.value("i", "");
            c.j = jc.value("j", "");
            c.g = need_number(jc, "g", "couplings");
            f.device.couplings.push_back(c);
        }
    }
    f.device.rwa = j.value("rwa", false);
    f.device.validate();

    if (j.contains("drives")) {
        for (const auto& jd : j["drives"]) {
            DriveSpec d;
            d.control = jd.value("control", "");
            f.device.index_of(d.control);
            d.omega_d = number_or(jd, "omega_d", 0.0);
            d.Omega = number_or(jd, "Omega", 0.0);
            d.phi0 = number_or(jd, "phi0", 3.14159265358979323846);
            if (jd.contains("crosstalk_target")) {
                d.crosstalk_target = jd["crosstalk_target"].get<std::string>();
                f.device.index_of(*d.crosstalk_target);
            }
            d.R = number_or(jd, "R", 0.0);
            d.phiR = number_or(jd, "phiR", 0.0);
            if (d.Omega < 0.0 || d.R < 0.0) throw ConfigError("drives: Omega and R must be >= 0");
            f.drives.push_back(d);
        }
    }
    if (j.contains("noise")) {
        const auto& jn = j["noise"];
        if (jn.contains("T1"))
            for (auto& [key, val] : jn["T1"].items()) f.noise.T1[key] = val.get<double>();
        if (jn.contains("T2"))
            for (auto& [key, val] : jn["T2"].items()) f.noise.T2[key] = val.get<double>();
        if (jn.contains("flux_dephasing")) {
            const auto& jf = jn["flux_dephasing"];
            DephasingModel m;
            m.slope = number_or(jf, "slope", 0.00288);
            m.offset = number_or(jf, "offset", 0.039);
            m.A_phi = number_or(jf, "A_phi", 0.0);
            m.omega_ir = number_or(jf, "omega_ir", 0.0);
            f.noise.flux_dephasing = m;
            if (jf.contains("subsystem")) f.noise.flux_qubit = jf["subsystem"].get<std::string>();
        }
        if (jn.contains("crosstalk")) {
            const auto& jx = jn["crosstalk"];
            NoiseConfig::CrosstalkModel m;
            m.base = number_or(jx, "base", 0.0);
            m.scale = number_or(jx, "scale", 0.0);
            m.power = number_or(jx, "power", 1.0);
            m.tau_power = number_or(jx, "tau_power", 0.0);
            f.noise.crosstalk = m;
        }
    }
    if (j.contains("cr")) {
        const auto& jc = j["cr"];
        if (jc.contains("model")) {
            const std::string m = jc["model"].get<std::string>();
            if (m == "effective") f.cr.model = CrModel::Effective;
            else if (m == "full") f.cr.model = CrModel::Full;
            else throw ConfigError("cr.model must be 'effective' or 'full'");
        }
        f.cr.pi_pulse_ns = number_or(jc, "pi_pulse_ns", 80.0);
        f.cr.omega_max = number_or(jc, "omega_max", 0.2);
    }
    if (j.contains("cz")) {
        const auto& jz = j["cz"];
        CzConfig z;
        z.omega1_of_f.coeffs = jz.at("omega1_poly").get<std::vector<double>>();
        const auto& jf = jz.at("zz_fit");
        z.zz_fit.inv_scale = need_number(jf, "inv_scale", "cz.zz_fit");
        z.zz_fit.inv_pole = need_number(jf, "inv_pole", "cz.zz_fit");
        z.zz_fit.quad_scale = need_number(jf, "quad_scale", "cz.zz_fit");
        z.zz_fit.quad_center = need_number(jf, "quad_center", "cz.zz_fit");
        z.zz_fit.offset = need_number(jf, "offset", "cz.zz_fit");
        const auto& jp = jz.at("pulse");
        z.pulse.f0 = need_number(jp, "f0", "cz.pulse");
        z.pulse.f_end = need_number(jp, "f_end", "cz.pulse");
        z.pulse.x = number_or(jp, "x", 5.0);
        if (z.pulse.x <= 0.0) throw ConfigError("cz.pulse.x must be positive");
        if (jz.contains("omega1_scan")) {
            z.scan_lo = jz["omega1_scan"][0].get<double>();
            z.scan_hi = jz["omega1_scan"][1].get<double>();
        }
        if (jz.contains("gap_labels")) {
            z.gap_a = jz["gap_labels"][0].get<std::vector<int>>();
            z.gap_b = jz["gap_labels"][1].get<std::vector<int>>();
        }
        f.cz = z;
    }
    if (j.contains("sweeps") && j["sweeps"].is_object() && !j["sweeps"].empty()) {
        const auto& js = j["sweeps"];
        SweepSpec s;
        s.param = js.value("param", "");
        s.start = number_or(js, "start", 0.0);
        s.stop = number_or(js, "stop", 0.0);
        s.points = static_cast<int>(number_or(js, "points", 2));
        if (!s.param.empty()) f.sweep = s;
    }
    f.raw = std::make_shared<json>(std::move(j));
    return f;
}

}  // namespace

DeviceFile DeviceFile::with_param(const std::string& path, double value) const {
    json copy = *raw;
    json* slot = resolve_path(copy, path);
    if (!slot) throw ConfigError("sweep parameter path does not resolve: " + path);
    if (!slot->is_number()) throw ConfigError("sweep parameter is not numeric: " + path);
    *slot = value;
    return parse_from_json(std::move(copy));
}

DeviceFile load_device_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open device file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_device_json(ss.str());
}

DeviceFile parse_device_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, true);  // allow comments
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("device file is not valid JSON: ") + e.what());
    }
    return parse_from_json(std::move(j));
}

SweepSpec parse_sweep_arg(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep must be path=start:stop:points");
    SweepSpec s;
    s.param = arg.substr(0, eq);
    const std::string rest = arg.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = rest.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("sweep must be path=start:stop:points");
    try {
        s.start = std::stod(rest.substr(0, c1));
        s.stop = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
        s.points = std::stoi(rest.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("sweep must be path=start:stop:points with numeric bounds");
    }
    if (s.points < 2) throw ConfigError("sweep needs at least 2 points");
    return s;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace zzfree
