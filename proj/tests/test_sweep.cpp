#include <doctest.h>

#include "lefthand/sweep.hpp"

using namespace lefthand;

namespace {

SweepSpec small_spec(const char* id, int n, CoherenceSource source = CoherenceSource::both)
{
    SweepSpec spec = default_spec(preset(id));
    spec.n_points = n;
    spec.source = source;
    spec.threads = 1;
    return spec;
}

bool same_points(const SweepResult& a, const SweepResult& b)
{
    if (a.traces.size() != b.traces.size())
        return false;
    for (std::size_t t = 0; t < a.traces.size(); ++t) {
        const auto& pa = a.traces[t].points;
        const auto& pb = b.traces[t].points;
        if (pa.size() != pb.size())
            return false;
        for (std::size_t k = 0; k < pa.size(); ++k) {
            const auto& x = pa[k].response;
            const auto& y = pb[k].response;
            if (x.Delta_e != y.Delta_e || x.eps_r != y.eps_r || x.mu_r != y.mu_r || x.n != y.n ||
                x.flags != y.flags)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("detuning grid")
{
    const auto g = detuning_grid(-10, 10, 801);
    CHECK(g.size() == 801);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == 10.0);
    CHECK(g[400] == 0.0);
    CHECK(detuning_grid(-1, 1, 2) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("sweep spec validation")
{
    auto spec = small_spec("fig2-a", 1);
    CHECK_THROWS_AS(validate(spec), ConfigError);
    spec.n_points = 5;
    spec.Delta_e_lo = 3.0;
    spec.Delta_e_hi = 3.0;
    CHECK_THROWS_AS(validate(spec), ConfigError);
    spec.Delta_e_lo = -3.0;
    spec.Gamma2_values = {0.2, -1.0};
    CHECK_THROWS_WITH_AS(validate(spec), "NegativeRate(Gamma2)", ValidationError);
    spec.Gamma2_values.clear();
    CHECK_THROWS_AS(validate(spec), ConfigError);
    CHECK_THROWS_AS(parse_source("hybrid"), ConfigError);
    CHECK_THROWS_AS(parse_variant("lindblad"), ConfigError);
}

TEST_CASE("two-point sweep shape")
{
    const auto r = run_sweep(small_spec("fig2-a", 2));
    REQUIRE(r.traces.size() == 8);
    CHECK(r.total_points == 16);
    CHECK(r.flagged_points == 0);
    for (std::size_t t = 0; t < r.traces.size(); ++t) {
        CHECK(r.traces[t].source == (t < 4 ? CoherenceSource::analytical : CoherenceSource::numerical));
        CHECK(r.traces[t].Gamma2 == r.spec.Gamma2_values[t % 4]);
        CHECK(r.traces[t].points.size() == 2);
    }
    CHECK(r.discrepancies.size() == 4);
    CHECK(r.find(CoherenceSource::numerical, 0.6) == &r.traces[6]);
    CHECK(r.find(CoherenceSource::numerical, 0.5) == nullptr);
}

TEST_CASE("points carry their linked parameter snapshot")
{
    const auto r = run_sweep(small_spec("fig3-c", 5, CoherenceSource::analytical));
    for (const auto& t : r.traces) {
        for (const auto& pt : t.points) {
            CHECK(pt.params.Gamma2 == t.Gamma2);
            CHECK(pt.params.Gamma1 == 1.5 * t.Gamma2);
            CHECK(pt.params.Delta_e == pt.response.Delta_e);
            CHECK(pt.params.Delta_b == -1.5 * pt.response.Delta_e);
            CHECK(pt.params.Omega_c == 28.0);
        }
    }
}

TEST_CASE("sweeps are deterministic and independent of thread count")
{
    auto spec = small_spec("fig2-b", 41);
    const auto a = run_sweep(spec);
    const auto b = run_sweep(spec);
    spec.threads = 4;
    const auto c = run_sweep(spec);
    CHECK(same_points(a, b));
    CHECK(same_points(a, c));
}

TEST_CASE("source both equals the single-source sweeps")
{
    const auto both = run_sweep(small_spec("fig2-a", 21));
    const auto an = run_sweep(small_spec("fig2-a", 21, CoherenceSource::analytical));
    const auto nu = run_sweep(small_spec("fig2-a", 21, CoherenceSource::numerical));
    for (double g : both.spec.Gamma2_values) {
        const auto* x = both.find(CoherenceSource::analytical, g);
        const auto* y = an.find(CoherenceSource::analytical, g);
        const auto* z = both.find(CoherenceSource::numerical, g);
        const auto* w = nu.find(CoherenceSource::numerical, g);
        REQUIRE((x && y && z && w));
        for (std::size_t k = 0; k < x->points.size(); ++k) {
            CHECK(x->points[k].response.eps_r == y->points[k].response.eps_r);
            CHECK(z->points[k].response.mu_r == w->points[k].response.mu_r);
            // Each point is exactly the response map applied to its coherences.
            const auto& p = x->points[k];
            const auto again = make_response(p.params.Delta_e, p.rho23, p.rho24, p.params);
            CHECK(again.n == p.response.n);
        }
    }
    CHECK(an.discrepancies.empty());
}

TEST_CASE("discrepancy report locates the largest gap")
{
    const auto r = run_sweep(small_spec("fig2-a", 21));
    for (std::size_t g = 0; g < r.discrepancies.size(); ++g) {
        const auto& d = r.discrepancies[g];
        const auto& an = r.traces[g].points;
        const auto& nu = r.traces[4 + g].points;
        double worst = 0.0;
        for (std::size_t k = 0; k < an.size(); ++k)
            worst = std::max(worst, std::abs(an[k].rho23 - nu[k].rho23));
        CHECK(d.Gamma2 == r.spec.Gamma2_values[g]);
        CHECK(d.max_abs_rho23 == worst);
        CHECK(d.max_abs_rho23 > 0.0);
        CHECK(d.at_Delta_e_rho23 >= -10.0);
        CHECK(d.at_Delta_e_rho23 <= 10.0);
    }
}

TEST_CASE("band widths are stable under grid refinement")
{
    auto spec = small_spec("fig2-a", 401, CoherenceSource::analytical);
    spec.Delta_e_lo = -200;
    spec.Delta_e_hi = 200;
    const auto coarse = run_sweep(spec);
    spec.n_points = 1601;
    const auto fine = run_sweep(spec);
    for (std::size_t t = 0; t < coarse.traces.size(); ++t) {
        const double wc = total_width(coarse.traces[t].neg_eps);
        const double wf = total_width(fine.traces[t].neg_eps);
        CHECK(std::abs(wc - wf) <= 1.0);
    }
}

TEST_CASE("vanishing closed-form denominator is flagged, not fatal")
{
    SystemParameters base;
    base.gamma1 = 7.0;
    base.gamma2 = 1.0;
    base.gamma3 = 2.0;
    base.Omega_c = 2.0;
    base.Delta_c = 0.0;
    SweepSpec spec = default_spec(custom_scenario("degenerate", base));
    spec.Gamma2_values = {0.0};
    spec.Delta_e_lo = -1;
    spec.Delta_e_hi = 1;
    spec.n_points = 3;
    spec.source = CoherenceSource::analytical;
    const auto r = run_sweep(spec);
    CHECK(r.flagged_points == 1);
    CHECK(r.traces[0].points[1].response.flags == flag_div_by_zero);
    CHECK(std::isnan(r.traces[0].points[1].response.eps_r.real()));
    CHECK(r.traces[0].points[0].response.ok());
    CHECK(!r.weak_probe_ok);
}

TEST_CASE("mostly failing sweeps abort")
{
    SystemParameters base;
    base.Omega_e = 0.0; // no probe field, so no electric polarizability anywhere
    SweepSpec spec = default_spec(custom_scenario("dark", base));
    spec.n_points = 5;
    spec.source = CoherenceSource::analytical;
    CHECK_THROWS_AS(run_sweep(spec), Error);
}

TEST_CASE("compare scenarios")
{
    const auto a = run_sweep(small_spec("fig2-a", 41));
    const auto b = run_sweep(small_spec("fig2-b", 41));

    const auto self = compare_scenarios(a, a);
    CHECK(self.widths.size() == 8 * 3);
    for (const auto& row : self.widths)
        CHECK(row.delta() == 0.0);
    REQUIRE(self.resonance.size() == 8);
    CHECK(self.resonance[0].Delta_e == 0.0);

    const auto ab = compare_scenarios(a, b);
    CHECK(ab.id_a == "fig2-a");
    CHECK(ab.id_b == "fig2-b");

    auto other_grid = small_spec("fig2-b", 21);
    CHECK_THROWS_AS(compare_scenarios(a, run_sweep(other_grid)), IncompatibleGrids);
    auto other_pumps = small_spec("fig2-b", 41);
    other_pumps.Gamma2_values = {0.0, 0.4};
    CHECK_THROWS_AS(compare_scenarios(a, run_sweep(other_pumps)), IncompatibleGrids);

    const auto an = run_sweep(small_spec("fig2-a", 41, CoherenceSource::analytical));
    const auto nu = run_sweep(small_spec("fig2-b", 41, CoherenceSource::numerical));
    CHECK_THROWS_AS(compare_scenarios(an, nu), IncompatibleGrids);
}
