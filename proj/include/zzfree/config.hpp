#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "zzfree/channels.hpp"
#include "zzfree/cr_dynamics.hpp"
#include "zzfree/device.hpp"

namespace zzfree {

struct NoiseConfig {
    std::map<std::string, double> T1;  // us, per subsystem id
    std::map<std::string, double> T2;
    std::optional<DephasingModel> flux_dephasing;
    std::optional<std::string> flux_qubit;  // subsystem whose flux drives the dephasing
    // classical crosstalk fit R(f, tau) = (base - scale |f - 1/2|^power) * tau_us^tau_power
    struct CrosstalkModel {
        double base = 0.0;
        double scale = 0.0;
        double power = 1.0;
        double tau_power = 0.0;
    };
    std::optional<CrosstalkModel> crosstalk;

    CoherenceTimes coherence(const std::string& id) const;
};

struct CrConfig {
    std::optional<CrModel> model;  // unset: effective for 2 qubits + 1 harmonic coupler
    double pi_pulse_ns = 80.0;     // total pi-pulse overhead in t_g = 2 tau + overhead
    double omega_max = 0.2;
};

struct CzConfig {
    Polynomial omega1_of_f;
    ZzFit zz_fit;
    TanhPulse pulse;
    double scan_lo = 0.0, scan_hi = 0.0;  // omega1 scan range for the gap search
    BareLabel gap_a, gap_b;
};

struct SweepSpec {
    std::string param;  // dotted path into the device file
    double start = 0.0, stop = 0.0;
    int points = 2;
};

struct DeviceFile {
    DeviceSpec device;
    std::vector<DriveSpec> drives;
    NoiseConfig noise;
    CrConfig cr;
    std::optional<CzConfig> cz;
    std::optional<SweepSpec> sweep;
    std::shared_ptr<nlohmann::json> raw;

    CrModel cr_model() const;  // resolved model choice
    DriveSpec default_drive() const;
    /// Re-parse the file with one parameter replaced (sweep support).
    DeviceFile with_param(const std::string& path, double value) const;
};

DeviceFile load_device_file(const std::string& path);
DeviceFile parse_device_json(const std::string& text);

SweepSpec parse_sweep_arg(const std::string& arg);  // "path=start:stop:points"

/// Fixed 9-significant-digit formatting used by all emitters.
std::string format_number(double v);

}  // namespace zzfree
