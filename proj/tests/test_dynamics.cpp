#include <doctest.h>

#include <random>

#include "lefthand/dynamics.hpp"
#include "oracle.hpp"

using namespace lefthand;
using cd = std::complex<double>;

namespace {

SystemParameters fig2a_pumped(double Delta_e)
{
    SystemParameters p = preset("fig2-a").base;
    p.Gamma2 = 0.4;
    p.Gamma1 = 0.6;
    p.Delta_e = Delta_e;
    p.Delta_b = -1.5 * Delta_e;
    return p;
}

double max_abs(const oracle::Mat4& m)
{
    return m.cwiseAbs().maxCoeff();
}

void check_close(cd got, cd want, double tol)
{
    CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

} // namespace

TEST_CASE("vec is column stacked")
{
    CHECK(vec_index(1, 1) == 0);
    CHECK(vec_index(2, 1) == 1);
    CHECK(vec_index(1, 2) == 4);
    CHECK(vec_index(4, 4) == 15);

    RhoMatrix<double> m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = cd(i, j);
    const auto v = vec<double>(m);
    CHECK(v(vec_index(3, 2)) == cd(2, 1));
    CHECK(unvec<double>(v) == m);
}

TEST_CASE("verbatim generator reproduces the printed equations")
{
    std::mt19937_64 rng(20240101);
    for (int k = 0; k < 200; ++k) {
        const auto p = oracle::random_params(rng);
        const auto rho = oracle::random_density(rng);
        const auto gen = build_generator(p, GeneratorVariant::verbatim);
        const oracle::Mat4 want = oracle::printed_derivative(p, rho);
        CHECK(max_abs(gen(rho) - want) <= 1e-12 * std::max(1.0, max_abs(want)));
    }
}

TEST_CASE("hermitized generator is the Lindblad form")
{
    std::mt19937_64 rng(99);
    for (int k = 0; k < 200; ++k) {
        const auto p = oracle::random_params(rng);
        const auto rho = oracle::random_density(rng);
        const auto gen = build_generator(p, GeneratorVariant::hermitized);
        const oracle::Mat4 want = oracle::lindblad_derivative(p, rho);
        CHECK(max_abs(gen(rho) - want) <= 1e-12 * std::max(1.0, max_abs(want)));
    }
}

TEST_CASE("rho_12 row coefficients")
{
    const auto p = fig2a_pumped(0.0);
    const auto gen = build_generator(p, GeneratorVariant::verbatim);
    const cd self = gen.L(vec_index(1, 2), vec_index(1, 2));
    CHECK(self.real() == doctest::Approx(-(8.0 + 0.6 + 0.4) / 2));
    CHECK(self.imag() == doctest::Approx(0.25));
    CHECK(gen.L(vec_index(1, 2), vec_index(1, 1)) == cd(0, -22.5));
    CHECK(gen.L(vec_index(1, 2), vec_index(2, 2)) == cd(0, 22.5));
}

TEST_CASE("both variants conserve trace and hermiticity")
{
    std::mt19937_64 rng(5);
    for (auto variant : {GeneratorVariant::verbatim, GeneratorVariant::hermitized}) {
        for (int k = 0; k < 50; ++k) {
            const auto p = oracle::random_params(rng);
            const auto rho = oracle::random_density(rng);
            const auto d = build_generator(p, variant)(rho);
            CHECK(std::abs(d.trace()) <= 1e-12);
            CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("without drives the ground state is stationary")
{
    SystemParameters p;
    p.Omega_c = p.Omega_e = p.Omega_b = 0.0;
    for (auto variant : {GeneratorVariant::verbatim, GeneratorVariant::hermitized}) {
        const auto gen = build_generator(p, variant);
        CHECK(gen(DensityMatrix::ground().rho).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("frozen steady states")
{
    SUBCASE("resonant probe, both variants agree")
    {
        const auto p = fig2a_pumped(0.0);
        for (auto variant : {GeneratorVariant::verbatim, GeneratorVariant::hermitized}) {
            const auto rho = steady_state(build_generator(p, variant));
            check_close(rho(2, 3), cd(4.342270716562741e-05, -0.001354778206147013), 1e-9);
            check_close(rho(2, 4), cd(2.737239084634731e-05, -0.0013870968060442051), 1e-9);
            CHECK(rho.population(1) == doctest::Approx(0.3401341984791302).epsilon(1e-10));
            CHECK(rho.population(2) == doctest::Approx(0.3285619632543369).epsilon(1e-10));
            CHECK(rho.population(3) == doctest::Approx(0.1984919561587499).epsilon(1e-10));
            CHECK(rho.population(4) == doctest::Approx(0.13281188210777906).epsilon(1e-10));
        }
    }
    SUBCASE("detuned probe, variants differ")
    {
        const auto p = fig2a_pumped(2.5);
        const auto v = steady_state(build_generator(p, GeneratorVariant::verbatim));
        check_close(v(2, 3), cd(0.00032603426513986384, -0.0013790572021669012), 1e-9);
        check_close(v(2, 4), cd(-0.0006475325930533881, -0.0014597666853699363), 1e-9);
        CHECK(v.population(4) == doctest::Approx(0.13287209286722007).epsilon(1e-10));

        const auto h = steady_state(build_generator(p, GeneratorVariant::hermitized));
        check_close(h(2, 3), cd(0.0003293277287053429, -0.001378238921642063), 1e-9);
        check_close(h(2, 4), cd(-0.0006532743148052723, -0.0014578715826544947), 1e-9);
        CHECK(h.population(4) == doctest::Approx(0.1328707312903093).epsilon(1e-10));
    }
}

TEST_CASE("closed control subsystem")
{
    // Only the 1-2 transition is driven and level 2 decays back to 1, so
    // levels 3 and 4 stay empty and the two-level result applies.
    SystemParameters p;
    p.Omega_e = p.Omega_b = 0.0;
    p.gamma1 = 8.0;
    p.Omega_c = 3.0;
    p.Delta_c = 0.0;
    const auto rho = steady_state(build_generator(p, GeneratorVariant::hermitized));
    const double s = 2 * (2 * p.Omega_c) * (2 * p.Omega_c) / (p.gamma1 * p.gamma1);
    CHECK(rho.population(2) == doctest::Approx(s / (2 * (1 + s))).epsilon(1e-12));
    CHECK(std::abs(rho(3, 3)) <= 1e-14);
    CHECK(std::abs(rho(4, 4)) <= 1e-14);
}

TEST_CASE("steady state rejects a degenerate system")
{
    SystemParameters p;
    p.Omega_c = p.Omega_e = p.Omega_b = 0.0;
    p.gamma1 = p.gamma2 = p.gamma3 = 0.0;
    CHECK_THROWS_AS(steady_state(build_generator(p, GeneratorVariant::verbatim)), SingularSystem);
}

TEST_CASE("evolve")
{
    const auto p = fig2a_pumped(0.0);
    const auto gen = build_generator(p, GeneratorVariant::verbatim);

    SUBCASE("zero time is the identity")
    {
        const auto rho0 = DensityMatrix::populations(0.25, 0.25, 0.25, 0.25);
        CHECK(evolve(gen, rho0, 0.0, 1e-3).rho == rho0.rho);
    }
    SUBCASE("undriven decay returns to the ground state")
    {
        SystemParameters q;
        q.Omega_c = q.Omega_e = q.Omega_b = 0.0;
        const auto g = build_generator(q, GeneratorVariant::verbatim);
        const auto rho = evolve(g, DensityMatrix::populations(0, 1, 0, 0), 100.0 / q.gamma1, 1e-3);
        CHECK(rho.population(1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rho.population(2) <= 1e-30);
    }
    SUBCASE("long time limit matches the steady state")
    {
        const auto ss = steady_state(gen);
        const auto rho = evolve(gen, DensityMatrix::ground(), 2000.0, 1e-3);
        CHECK((rho.rho - ss.rho).cwiseAbs().maxCoeff() <= 1e-6);

        auto q = p;
        q.Gamma2 = 0.8;
        q.Gamma1 = 1.2;
        const auto g8 = build_generator(q, GeneratorVariant::verbatim);
        const auto rho8 = evolve(g8, DensityMatrix::ground(), 2000.0, 1e-2);
        CHECK((rho8.rho - steady_state(g8).rho).cwiseAbs().maxCoeff() <= 1e-8);
    }
    SUBCASE("an oversized step is refused")
    {
        CHECK_THROWS_AS(evolve(gen, DensityMatrix::ground(), 50.0, 1.0), StepTooLarge);
    }
    SUBCASE("non-physical initial states are refused")
    {
        CHECK_THROWS_AS(evolve(gen, DensityMatrix::populations(0.5, 0.5, 0.5, 0), 1.0, 1e-2), NonPhysical);
    }
    SUBCASE("evolution is linear in the initial state")
    {
        const auto a = DensityMatrix::ground();
        const auto b = DensityMatrix::populations(0, 0, 0.5, 0.5);
        const DensityMatrix mix{0.3 * a.rho + 0.7 * b.rho};
        const auto ra = evolve(gen, a, 1.0, 1e-3), rb = evolve(gen, b, 1.0, 1e-3), rm = evolve(gen, mix, 1.0, 1e-3);
        CHECK((rm.rho - (0.3 * ra.rho + 0.7 * rb.rho)).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("variant discrepancies are confined to the 3-4 coherence")
{
    auto p = fig2a_pumped(2.5);
    auto rows = variant_discrepancies(p);
    REQUIRE(!rows.empty());
    for (const auto& r : rows)
        CHECK((r.row == "rho_34" || r.row == "rho_43"));

    CHECK(variant_discrepancies(fig2a_pumped(0.0)).empty());

    p.gamma3 = 2.0;
    rows = variant_discrepancies(p);
    bool saw_24 = false;
    for (const auto& r : rows) {
        CHECK((r.row == "rho_34" || r.row == "rho_43" || r.row == "rho_24" || r.row == "rho_42"));
        saw_24 = saw_24 || r.row == "rho_24";
    }
    CHECK(saw_24);
}

TEST_CASE("weak probe closed forms")
{
    SUBCASE("resonant control coherence")
    {
        SystemParameters p;
        p.gamma1 = 8.0;
        p.Gamma1 = p.Gamma2 = 0.0;
        p.Omega_c = 22.5;
        p.Delta_c = 0.0;
        CHECK(rho21_weak(p) == cd(0.0, 5.625));
    }
    SUBCASE("frozen control coherence")
    {
        const cd r = rho21_weak(fig2a_pumped(0.0));
        CHECK(r.real() == doctest::Approx(0.2769230769230769).epsilon(1e-15));
        CHECK(r.imag() == doctest::Approx(4.984615384615384).epsilon(1e-15));
    }
    SUBCASE("random draws against the real-arithmetic oracle")
    {
        std::mt19937_64 rng(4242);
        for (int k = 0; k < 1000; ++k) {
            const auto p = oracle::random_params(rng);
            const auto want = oracle::weak_probe(p);
            check_close(rho21_weak(p), want.rho21, 1e-12);
            CHECK(std::abs(rho23_weak(p) - want.rho23) <= 1e-12 * std::abs(want.rho23));
            CHECK(std::abs(rho24_weak(p) - want.rho24) <= 1e-12 * std::abs(want.rho24));
        }
    }
    SUBCASE("rho24 numerator carries rho21 and rho23 its conjugate")
    {
        auto p = fig2a_pumped(1.0);
        const cd r21 = rho21_weak(p);
        const cd s = p.gamma1 + p.gamma2 + p.Gamma1 + p.Gamma2 + cd(0, p.omega43);
        const cd I(0, 1);
        const cd den24 = (I * p.Delta_b + I * p.Delta_c - (p.gamma3 + I * p.omega43) / 2.0) *
                             (I * p.Delta_b - s / 2.0) +
                         p.Omega_c * p.Omega_c;
        check_close(rho24_weak(p), p.Omega_b * p.Omega_c * r21 / den24, 1e-14);
        const cd den23 = (I * p.Delta_e + I * p.Delta_c + (p.gamma3 + I * p.omega43) / 2.0) *
                             (I * p.Delta_e - s / 2.0) +
                         p.Omega_c * p.Omega_c;
        check_close(rho23_weak(p), p.Omega_e * p.Omega_c * std::conj(r21) / den23, 1e-14);
    }
    SUBCASE("vanishing denominator")
    {
        SystemParameters p;
        p.gamma1 = 7.0;
        p.gamma2 = 1.0;
        p.gamma3 = 2.0;
        p.Omega_c = 2.0;
        p.Delta_c = 0.0;
        CHECK_THROWS_AS(rho23_weak(p), DivisionByZero);
    }
    SUBCASE("regime check")
    {
        SystemParameters p;
        CHECK(weak_probe_regime(p));
        p.Omega_b = 3.0;
        CHECK(!weak_probe_regime(p));
    }
}

TEST_CASE("long double instantiation agrees")
{
    const auto p = fig2a_pumped(1.5);
    const auto d = steady_state(build_generator<double>(p, GeneratorVariant::hermitized));
    const auto l = steady_state(build_generator<long double>(p, GeneratorVariant::hermitized));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            CHECK(std::abs(cd(l(i, j)) - d(i, j)) <= 1e-13);
}

TEST_CASE("property: relaxation from any state reaches the steady state")
{
    std::mt19937_64 rng(31337);
    for (auto id : preset_ids()) {
        const auto scenario = preset(id);
        for (double g2 : scenario.pump_values) {
            const auto p = apply_linkages(scenario, 0.0, g2);
            const auto gen = build_generator(p, GeneratorVariant::verbatim);
            const auto ss = steady_state(gen);
            CHECK(diagnose<double>(ss.rho).physical(1e-9));
            const DensityMatrix start{oracle::random_density(rng)};
            const auto rho = evolve(gen, start, 2000.0, 1e-2);
            CHECK((rho.rho - ss.rho).cwiseAbs().maxCoeff() <= 1e-6);
        }
    }
}
