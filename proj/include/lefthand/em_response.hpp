#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lefthand/atomic_model.hpp"

namespace lefthand {

/// Per-point status bits carried through sweeps and exports.
enum PointFlag : std::uint32_t
{
    flag_none = 0,
    flag_pole_eps = 1u << 0,      ///< local-field pole in eps_r
    flag_pole_mu = 1u << 1,       ///< local-field pole in mu_r
    flag_singular = 1u << 2,      ///< steady-state system rank deficient
    flag_nonphysical = 1u << 3,   ///< steady state left the physical set
    flag_div_by_zero = 1u << 4,   ///< closed-form denominator vanished
};

std::string flags_to_string(std::uint32_t flags);
std::uint32_t flags_from_string(const std::string& text);

struct ResponsePoint
{
    double Delta_e = 0.0;
    std::complex<double> alpha_e; ///< m^3
    std::complex<double> alpha_m; ///< m^3
    std::complex<double> eps_r;
    std::complex<double> mu_r;
    std::complex<double> n;
    std::uint32_t flags = flag_none;

    bool ok() const { return flags == flag_none; }
};

enum class Predicate
{
    neg_eps,
    neg_mu,
    double_negative,
};

const char* to_string(Predicate predicate);

struct Band
{
    double lo = 0.0;
    double hi = 0.0;
    Predicate predicate = Predicate::neg_eps;
    /// The predicate still holds at the first/last grid point, so the true
    /// band edge lies outside the sampled window.
    bool clipped_lo = false;
    bool clipped_hi = false;

    double width() const { return hi - lo; }
    bool clipped() const { return clipped_lo || clipped_hi; }
};

/// Omega (gamma units) -> SI frequency, angular or ordinary per params.rabi_angular.
double rabi_to_si(double omega, const SystemParameters& params);

/// |d32|^2 rho_32 / (eps0 hbar Omega_e), with rho_32 = conj(rho_23).
std::complex<double> polarizability(std::complex<double> rho23, const SystemParameters& params);

/// mu0 |mu42|^2 rho_24 / (hbar Omega_b).
std::complex<double> magnetizability(std::complex<double> rho24, const SystemParameters& params);

/// (1 + 2/3 N alpha) / (1 - 1/3 N alpha). Throws PoleEncountered when the
/// denominator magnitude drops below 1e-12.
std::complex<double> clausius_mossotti(double N, std::complex<double> alpha);

/// sqrt(eps) * sqrt(mu), principal branch on each factor.
std::complex<double> refractive_index(std::complex<double> eps_r, std::complex<double> mu_r);

/// Maps a pair of probe coherences to a full response point. Local-field
/// poles are recorded in `flags` with NaN in the affected quantities.
ResponsePoint make_response(double Delta_e, std::complex<double> rho23, std::complex<double> rho24,
                            const SystemParameters& params);

/// Maximal intervals where the predicate holds, with edges placed at the
/// linearly interpolated zero crossing of the relevant real part.
std::vector<Band> detect_bands(std::span<const ResponsePoint> points, Predicate predicate);

/// Sum of band widths.
double total_width(std::span<const Band> bands);

} // namespace lefthand
