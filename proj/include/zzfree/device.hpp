#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zzfree/spectra.hpp"

namespace zzfree {

enum class SubsystemKind { Transmon, Csfq, TunableTransmon, Resonator, ExplicitLadder };
enum class SubsystemRole { Qubit, Coupler };

/// ExplicitLadder params: either a Duffing (omega, delta) pair or a raw list
/// of level energies.
struct ExplicitLadderParams {
    DuffingParams duffing;
    std::vector<double> energies;  // takes precedence when non-empty
};

using SubsystemParams = std::variant<TransmonParams, CsfqParams, TunableTransmonParams,
                                     ResonatorParams, ExplicitLadderParams>;

struct SubsystemSpec {
    std::string id;
    SubsystemKind kind = SubsystemKind::Resonator;
    SubsystemRole role = SubsystemRole::Coupler;
    int dim = 5;
    SubsystemParams params;

    /// Bare level energies for this subsystem, truncated to dim.
    LevelLadder ladder() const;
};

struct CouplingSpec {
    std::string i, j;
    double g = 0.0;  // GHz, signed
};

struct DeviceSpec {
    std::vector<SubsystemSpec> subsystems;
    std::vector<CouplingSpec> couplings;
    bool rwa = false;  // drop counter-rotating coupling terms when set

    int index_of(const std::string& id) const;
    const SubsystemSpec& subsystem(const std::string& id) const;
    std::vector<int> qubit_indices() const;
    std::vector<int> coupler_indices() const;
    void validate() const;
};

struct DriveSpec {
    std::string control;
    double omega_d = 0.0;  // GHz; 0 means "use the dressed target frequency"
    double Omega = 0.0;    // GHz
    double phi0 = 0.0;     // rad
    std::optional<std::string> crosstalk_target;
    double R = 0.0;        // crosstalk amplitude scale
    double phiR = 0.0;     // crosstalk phase
};

}  // namespace zzfree
