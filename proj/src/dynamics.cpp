#include "lefthand/dynamics.hpp"

#include <algorithm>

namespace lefthand {

const char* to_string(GeneratorVariant variant)
{
    return variant == GeneratorVariant::verbatim ? "verbatim" : "hermitized";
}

GeneratorVariant parse_variant(const std::string& text)
{
    if (text == "verbatim")
        return GeneratorVariant::verbatim;
    if (text == "hermitized")
        return GeneratorVariant::hermitized;
    throw ConfigError("ConfigError: unknown generator variant '" + text + "' (verbatim|hermitized)");
}

std::vector<VariantDiscrepancy> variant_discrepancies(const SystemParameters& params, double tol)
{
    const auto a = build_generator(params, GeneratorVariant::verbatim);
    const auto b = build_generator(params, GeneratorVariant::hermitized);

    std::vector<VariantDiscrepancy> out;
    for (int j = 1; j <= 4; ++j) {
        for (int i = 1; i <= 4; ++i) {
            const int k = vec_index(i, j);
            const double diff = (a.L.row(k) - b.L.row(k)).cwiseAbs().maxCoeff();
            if (diff > tol)
                out.push_back({"rho_" + std::to_string(i) + std::to_string(j), diff});
        }
    }
    return out;
}

std::complex<double> rho21_weak(const SystemParameters& p)
{
    using namespace std::complex_literals;
    const std::complex<double> den = p.gamma1 + p.Gamma1 + p.Gamma2 - 2.0i * p.Delta_c;
    if (den == 0.0)
        throw DivisionByZero("rho21_weak", p.Delta_e);
    return 2.0i * p.Omega_c / den;
}

std::complex<double> rho24_weak(const SystemParameters& p)
{
    using namespace std::complex_literals;
    const std::complex<double> r21 = rho21_weak(p);
    const std::complex<double> den =
        (1.0i * p.Delta_b + 1.0i * p.Delta_c - (p.gamma3 + 1.0i * p.omega43) / 2.0) *
            (1.0i * p.Delta_b - 0.5 * (p.gamma1 + p.gamma2 + p.Gamma1 + p.Gamma2 + 1.0i * p.omega43)) +
        p.Omega_c * p.Omega_c;
    if (den == 0.0)
        throw DivisionByZero("rho24_weak", p.Delta_e);
    return p.Omega_b * p.Omega_c * r21 / den;
}

std::complex<double> rho23_weak(const SystemParameters& p)
{
    using namespace std::complex_literals;
    const std::complex<double> r12 = std::conj(rho21_weak(p));
    // The printed denominator carries gamma3 here as well.
    const std::complex<double> den =
        (1.0i * p.Delta_e + 1.0i * p.Delta_c + (p.gamma3 + 1.0i * p.omega43) / 2.0) *
            (1.0i * p.Delta_e - 0.5 * (p.gamma1 + p.gamma2 + p.Gamma1 + p.Gamma2 + 1.0i * p.omega43)) +
        p.Omega_c * p.Omega_c;
    if (den == 0.0)
        throw DivisionByZero("rho23_weak", p.Delta_e);
    return p.Omega_e * p.Omega_c * r12 / den;
}

bool weak_probe_regime(const SystemParameters& p)
{
    return p.Omega_c >= 10.0 * std::max(p.Omega_e, p.Omega_b);
}

} // namespace lefthand
