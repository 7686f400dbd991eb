#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lefthand/errors.hpp"

namespace lefthand {

/// SI constants entering the polarizability prefactors.
namespace si {
inline constexpr double eps0 = 8.8541878128e-12;  ///< F/m
inline constexpr double mu0 = 1.25663706212e-6;   ///< N/A^2
inline constexpr double hbar = 1.054571817e-34;   ///< J s
inline constexpr double bohr_magneton = 9.2740100783e-24; ///< J/T
} // namespace si

/**
 * Parameters of the four-level model. Rates, Rabi frequencies, detunings and
 * the |3>-|4> splitting are expressed in units of gamma_unit; the density and
 * the dipole moments are SI.
 *
 * Level labels: |1> ground, |2> intermediate, |3>,|4> upper pair. The coupling
 * field drives 1-2, the electric probe 2-3, the magnetic probe 2-4.
 */
struct SystemParameters
{
    double gamma_unit = 0.67e6; ///< Hz

    double gamma1 = 8.0; ///< |2> -> |1>
    double gamma2 = 1.0; ///< |3> -> |2>
    double gamma3 = 1.0; ///< |4> -> |2>

    double Gamma1 = 0.0; ///< incoherent pump on 2-3
    double Gamma2 = 0.0; ///< incoherent pump on 2-4

    double Omega_c = 22.5;
    double Omega_e = 0.5;
    double Omega_b = 0.5;

    double Delta_c = -0.25;
    double Delta_e = 0.0;
    double Delta_b = 0.0;

    double omega43 = 0.0;

    double N = 1.04e21;  ///< m^-3
    double d32 = 2.5e-29; ///< C m, not a measured value
    double mu42 = si::bohr_magneton; ///< J/T, not a measured value

    /// Rabi frequencies convert to SI as Omega*gamma_unit*2pi when set,
    /// Omega*gamma_unit otherwise.
    bool rabi_angular = true;

    static constexpr double eps0 = si::eps0;
    static constexpr double mu0 = si::mu0;
    static constexpr double hbar = si::hbar;

    bool operator==(const SystemParameters&) const = default;
};

/// Returns `params` unchanged, or throws ValidationError naming the field.
const SystemParameters& validate(const SystemParameters& params);

/// Declarative rule `target = factor * source`.
struct LinkageRule
{
    double SystemParameters::*target;
    double SystemParameters::*source;
    double factor;
    const char* text;
};

struct ScenarioPreset
{
    std::string id;
    SystemParameters base;
    std::vector<double> pump_values; ///< Gamma2 values, gamma units
    std::vector<LinkageRule> linkage_rules;
};

/// Gamma1 = 1.5 Gamma2 and Delta_b = -1.5 Delta_e.
std::vector<LinkageRule> default_linkage_rules();

/// Built-in scenarios: fig2-a, fig2-b, fig3-c, fig3-d.
ScenarioPreset preset(std::string_view id);
std::span<const std::string_view> preset_ids();

/// Scenario built around arbitrary base parameters with the default rules.
ScenarioPreset custom_scenario(std::string id, const SystemParameters& base);

/// Parameter snapshot for one sweep point: Delta_e and Gamma2 set, linkage
/// rules re-applied, result validated.
SystemParameters apply_linkages(const ScenarioPreset& preset, double Delta_e, double Gamma2);

// Parameter file (flat JSON object, keys are the SystemParameters field names).

/// Parses `text` on top of `base`. Unknown keys, wrong types and malformed
/// documents raise ConfigError. The result is not validated.
SystemParameters parse_parameters(std::string_view text, const SystemParameters& base = {});
SystemParameters load_parameters(const std::string& path, const SystemParameters& base = {});
std::string serialize_parameters(const SystemParameters& params);

/// Field names in file order.
std::vector<std::string> parameter_field_names();

} // namespace lefthand
