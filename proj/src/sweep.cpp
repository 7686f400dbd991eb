#include "lefthand/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace lefthand {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Coherences
{
    std::complex<double> rho23{nan, nan};
    std::complex<double> rho24{nan, nan};
    std::uint32_t flags = flag_none;
};

Coherences analytical_coherences(const SystemParameters& p)
{
    Coherences c;
    try {
        c.rho23 = rho23_weak(p);
        c.rho24 = rho24_weak(p);
    } catch (const DivisionByZero&) {
        c.flags |= flag_div_by_zero;
    }
    return c;
}

Coherences numerical_coherences(const SystemParameters& p, GeneratorVariant variant)
{
    Coherences c;
    try {
        const DensityMatrix rho = steady_state(build_generator(p, variant));
        c.rho23 = rho(2, 3);
        c.rho24 = rho(2, 4);
    } catch (const SingularSystem&) {
        c.flags |= flag_singular;
    } catch (const NonPhysical&) {
        c.flags |= flag_nonphysical;
    }
    return c;
}

SweepPoint to_point(const Coherences& c, const SystemParameters& p)
{
    SweepPoint sp;
    sp.params = p;
    sp.rho23 = c.rho23;
    sp.rho24 = c.rho24;
    if (c.flags == flag_none) {
        try {
            sp.response = make_response(p.Delta_e, c.rho23, c.rho24, p);
            return sp;
        } catch (const DivisionByZero&) {
            sp.response.flags |= flag_div_by_zero;
        }
    }
    const std::complex<double> bad{nan, nan};
    sp.response.Delta_e = p.Delta_e;
    sp.response.alpha_e = sp.response.alpha_m = bad;
    sp.response.eps_r = sp.response.mu_r = sp.response.n = bad;
    sp.response.flags |= c.flags;
    return sp;
}

void fill_bands(SweepTrace& trace)
{
    const auto responses = trace.responses();
    trace.neg_eps = detect_bands(responses, Predicate::neg_eps);
    trace.neg_mu = detect_bands(responses, Predicate::neg_mu);
    trace.double_negative = detect_bands(responses, Predicate::double_negative);
}

std::vector<CoherenceSource> expand(CoherenceSource source)
{
    if (source == CoherenceSource::both)
        return {CoherenceSource::analytical, CoherenceSource::numerical};
    return {source};
}

bool same_grid(const SweepTrace& a, const SweepTrace& b)
{
    if (a.points.size() != b.points.size())
        return false;
    for (std::size_t k = 0; k < a.points.size(); ++k)
        if (a.points[k].response.Delta_e != b.points[k].response.Delta_e)
            return false;
    return true;
}

} // namespace

const char* to_string(CoherenceSource source)
{
    switch (source) {
    case CoherenceSource::analytical: return "analytical";
    case CoherenceSource::numerical: return "numerical";
    case CoherenceSource::both: return "both";
    }
    return "?";
}

CoherenceSource parse_source(const std::string& text)
{
    if (text == "analytical")
        return CoherenceSource::analytical;
    if (text == "numerical")
        return CoherenceSource::numerical;
    if (text == "both")
        return CoherenceSource::both;
    throw ConfigError("ConfigError: unknown coherence source '" + text + "' (analytical|numerical|both)");
}

void validate(const SweepSpec& spec)
{
    if (!(spec.Delta_e_lo < spec.Delta_e_hi))
        throw ConfigError("ConfigError: detuning range needs lo < hi");
    if (spec.n_points < 2)
        throw ConfigError("ConfigError: points must be at least 2");
    if (spec.Gamma2_values.empty())
        throw ConfigError("ConfigError: at least one Gamma2 value is required");
    for (double g : spec.Gamma2_values)
        if (!(g >= 0.0))
            throw ValidationError(ValidationError::Kind::NegativeRate, "Gamma2");
    lefthand::validate(spec.scenario.base);
}

SweepSpec default_spec(const ScenarioPreset& scenario)
{
    SweepSpec spec;
    spec.scenario = scenario;
    spec.Gamma2_values = scenario.pump_values;
    return spec;
}

std::vector<double> detuning_grid(double lo, double hi, int n_points)
{
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    const double span = hi - lo;
    for (int k = 0; k < n_points; ++k)
        grid[k] = k == n_points - 1 ? hi : lo + span * (static_cast<double>(k) / (n_points - 1));
    return grid;
}

std::vector<ResponsePoint> SweepTrace::responses() const
{
    std::vector<ResponsePoint> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.response);
    return out;
}

const std::vector<Band>& SweepTrace::bands(Predicate predicate) const
{
    switch (predicate) {
    case Predicate::neg_eps: return neg_eps;
    case Predicate::neg_mu: return neg_mu;
    default: return double_negative;
    }
}

const SweepTrace* SweepResult::find(CoherenceSource source, double Gamma2) const
{
    for (const auto& t : traces)
        if (t.source == source && t.Gamma2 == Gamma2)
            return &t;
    return nullptr;
}

SweepResult run_sweep(const SweepSpec& spec)
{
    validate(spec);
    const auto start = std::chrono::steady_clock::now();

    const auto grid = detuning_grid(spec.Delta_e_lo, spec.Delta_e_hi, spec.n_points);
    const auto sources = expand(spec.source);
    const std::size_t n_grid = grid.size();
    const std::size_t n_pump = spec.Gamma2_values.size();
    const std::size_t n_items = n_grid * n_pump;

    SweepResult result;
    result.spec = spec;
    for (auto source : sources) {
        for (double g : spec.Gamma2_values) {
            SweepTrace trace{source, g, {}, {}, {}, {}};
            trace.points.resize(n_grid);
            result.traces.push_back(std::move(trace));
        }
    }

    // Work item i covers pump i / n_grid at detuning i % n_grid; every item
    // writes only its own slots, so the outcome is independent of scheduling.
    auto work = [&](std::size_t item) {
        const std::size_t g = item / n_grid, k = item % n_grid;
        const SystemParameters p = apply_linkages(spec.scenario, grid[k], spec.Gamma2_values[g]);
        for (std::size_t s = 0; s < sources.size(); ++s) {
            const Coherences c = sources[s] == CoherenceSource::analytical
                                     ? analytical_coherences(p)
                                     : numerical_coherences(p, spec.generator_variant);
            result.traces[s * n_pump + g].points[k] = to_point(c, p);
        }
    };

    unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_items));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_items; ++i)
            work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n_items; i = next++)
                    work(i);
            });
    }

    for (auto& trace : result.traces) {
        for (const auto& pt : trace.points) {
            ++result.total_points;
            if (!pt.response.ok())
                ++result.flagged_points;
        }
    }
    if (2 * result.flagged_points > result.total_points)
        throw Error("sweep failed: " + std::to_string(result.flagged_points) + " of " +
                    std::to_string(result.total_points) + " points errored");

    for (auto& trace : result.traces)
        fill_bands(trace);

    if (spec.source == CoherenceSource::both) {
        for (std::size_t g = 0; g < n_pump; ++g) {
            const auto& an = result.traces[g];
            const auto& nu = result.traces[n_pump + g];
            Discrepancy d{spec.Gamma2_values[g], 0.0, nan, 0.0, nan};
            for (std::size_t k = 0; k < n_grid; ++k) {
                const auto& a = an.points[k];
                const auto& b = nu.points[k];
                if (!a.response.ok() || !b.response.ok())
                    continue;
                const double e23 = std::abs(a.rho23 - b.rho23);
                const double e24 = std::abs(a.rho24 - b.rho24);
                if (!(e23 <= d.max_abs_rho23)) {
                    d.max_abs_rho23 = e23;
                    d.at_Delta_e_rho23 = grid[k];
                }
                if (!(e24 <= d.max_abs_rho24)) {
                    d.max_abs_rho24 = e24;
                    d.at_Delta_e_rho24 = grid[k];
                }
            }
            result.discrepancies.push_back(d);
        }
    }

    const SystemParameters probe = apply_linkages(spec.scenario, grid.front(), spec.Gamma2_values.front());
    result.variant_notes = variant_discrepancies(probe);
    result.weak_probe_ok = weak_probe_regime(spec.scenario.base);
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void refresh_bands(SweepResult& result)
{
    for (auto& trace : result.traces)
        fill_bands(trace);
}

ComparisonReport compare_scenarios(const SweepResult& a, const SweepResult& b)
{
    ComparisonReport report;
    report.id_a = a.spec.scenario.id;
    report.id_b = b.spec.scenario.id;

    if (a.spec.Gamma2_values != b.spec.Gamma2_values)
        throw IncompatibleGrids("IncompatibleGrids: Gamma2 values differ");

    bool any = false;
    for (const auto& ta : a.traces) {
        const SweepTrace* tb = b.find(ta.source, ta.Gamma2);
        if (tb == nullptr)
            continue;
        if (!same_grid(ta, *tb))
            throw IncompatibleGrids("IncompatibleGrids: detuning grids differ");
        any = true;

        for (Predicate pred : {Predicate::neg_eps, Predicate::neg_mu, Predicate::double_negative}) {
            const auto& ba = ta.bands(pred);
            const auto& bb = tb->bands(pred);
            auto clipped = [](const std::vector<Band>& bands) {
                return std::any_of(bands.begin(), bands.end(), [](const Band& x) { return x.clipped(); });
            };
            report.widths.push_back(
                {ta.source, ta.Gamma2, pred, total_width(ba), total_width(bb), clipped(ba), clipped(bb)});
        }

        std::size_t k0 = 0;
        for (std::size_t k = 1; k < ta.points.size(); ++k)
            if (std::abs(ta.points[k].response.Delta_e) < std::abs(ta.points[k0].response.Delta_e))
                k0 = k;
        const auto& ra = ta.points[k0].response;
        const auto& rb = tb->points[k0].response;
        report.resonance.push_back({ta.source, ta.Gamma2, ra.Delta_e, ra.eps_r.real(), ra.mu_r.real(),
                                    ra.n.real(), rb.eps_r.real(), rb.mu_r.real(), rb.n.real()});
    }
    if (!any)
        throw IncompatibleGrids("IncompatibleGrids: no common coherence source");
    return report;
}

} // namespace lefthand
