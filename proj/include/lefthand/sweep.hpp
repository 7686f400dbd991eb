#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lefthand/atomic_model.hpp"
#include "lefthand/dynamics.hpp"
#include "lefthand/em_response.hpp"

namespace lefthand {

enum class CoherenceSource
{
    analytical, ///< weak-probe closed forms
    numerical,  ///< full steady state of the generator
    both,
};

const char* to_string(CoherenceSource source);
CoherenceSource parse_source(const std::string& text);

struct SweepSpec
{
    ScenarioPreset scenario;
    double Delta_e_lo = -10.0;
    double Delta_e_hi = 10.0;
    int n_points = 801;
    std::vector<double> Gamma2_values;
    CoherenceSource source = CoherenceSource::both;
    GeneratorVariant generator_variant = GeneratorVariant::verbatim;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Throws ConfigError when the spec cannot be run.
void validate(const SweepSpec& spec);

/// SweepSpec for a preset with its own pump values and default grid.
SweepSpec default_spec(const ScenarioPreset& scenario);

/// lo + (hi - lo) k / (n - 1); the midpoint of a symmetric grid is exactly 0.
std::vector<double> detuning_grid(double lo, double hi, int n_points);

struct SweepPoint
{
    ResponsePoint response;
    SystemParameters params;
    std::complex<double> rho23;
    std::complex<double> rho24;
};

/// One curve: a single coherence source at a single pump value.
struct SweepTrace
{
    CoherenceSource source; ///< analytical or numerical
    double Gamma2;
    std::vector<SweepPoint> points;
    std::vector<Band> neg_eps;
    std::vector<Band> neg_mu;
    std::vector<Band> double_negative;

    std::vector<ResponsePoint> responses() const;
    const std::vector<Band>& bands(Predicate predicate) const;
};

/// Analytical vs numerical coherence gap for one pump value.
struct Discrepancy
{
    double Gamma2;
    double max_abs_rho23;
    double at_Delta_e_rho23;
    double max_abs_rho24;
    double at_Delta_e_rho24;
};

struct SweepResult
{
    SweepSpec spec;
    std::vector<SweepTrace> traces; ///< ordered by source, then Gamma2
    std::vector<Discrepancy> discrepancies; ///< source == both only
    std::vector<VariantDiscrepancy> variant_notes; ///< at Delta_e = lo, first Gamma2
    std::size_t flagged_points = 0;
    std::size_t total_points = 0;
    bool weak_probe_ok = true;
    double elapsed_seconds = 0.0;

    const SweepTrace* find(CoherenceSource source, double Gamma2) const;
};

/// Evaluates every (Gamma2, Delta_e) grid point. Per-point failures are
/// flagged; the sweep throws only when more than half of the points fail.
SweepResult run_sweep(const SweepSpec& spec);

/// Recomputes the bands of every trace from its points.
void refresh_bands(SweepResult& result);

struct WidthRow
{
    CoherenceSource source;
    double Gamma2;
    Predicate predicate;
    double width_a;
    double width_b;
    bool clipped_a;
    bool clipped_b;

    double delta() const { return width_a - width_b; }
};

struct ResonanceRow
{
    CoherenceSource source;
    double Gamma2;
    double Delta_e; ///< grid point nearest to 0
    double re_eps_a, re_mu_a, re_n_a;
    double re_eps_b, re_mu_b, re_n_b;
};

struct ComparisonReport
{
    std::string id_a;
    std::string id_b;
    std::vector<WidthRow> widths;
    std::vector<ResonanceRow> resonance;
};

/// Band widths and resonance values side by side. Both results must share
/// the detuning grid, the pump values and at least one coherence source.
ComparisonReport compare_scenarios(const SweepResult& a, const SweepResult& b);

} // namespace lefthand
