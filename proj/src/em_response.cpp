#include "lefthand/em_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lefthand/errors.hpp"

namespace lefthand {

namespace {

constexpr std::pair<PointFlag, const char*> flag_names[] = {
    {flag_pole_eps, "pole_eps"},   {flag_pole_mu, "pole_mu"},          {flag_singular, "singular"},
    {flag_nonphysical, "nonphysical"}, {flag_div_by_zero, "div_by_zero"},
};

const std::complex<double> nan_c{std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};

double re_eps(const ResponsePoint& p)
{
    return (p.flags & flag_pole_eps) ? std::numeric_limits<double>::quiet_NaN() : p.eps_r.real();
}

double re_mu(const ResponsePoint& p)
{
    return (p.flags & flag_pole_mu) ? std::numeric_limits<double>::quiet_NaN() : p.mu_r.real();
}

using Value = double (*)(const ResponsePoint&);

bool negative(std::span<const ResponsePoint> pts, Value value, std::size_t k)
{
    return value(pts[k]) < 0.0;
}

// x where value crosses zero between grid index a (predicate off) and b (on).
double crossing(std::span<const ResponsePoint> pts, Value value, std::size_t a, std::size_t b)
{
    const double va = value(pts[a]), vb = value(pts[b]);
    const double xa = pts[a].Delta_e, xb = pts[b].Delta_e;
    if (!std::isfinite(va) || !std::isfinite(vb) || va == vb)
        return xb;
    const double t = std::clamp(va / (va - vb), 0.0, 1.0);
    return xa + t * (xb - xa);
}

template <typename Holds, typename Edge>
std::vector<Band> scan(std::span<const ResponsePoint> pts, Predicate predicate, Holds holds, Edge edge)
{
    const std::size_t n = pts.size();
    std::vector<Band> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (!holds(k))
            continue;
        const std::size_t first = k;
        while (k + 1 < n && holds(k + 1))
            ++k;
        Band b;
        b.predicate = predicate;
        b.clipped_lo = first == 0;
        b.clipped_hi = k == n - 1;
        b.lo = b.clipped_lo ? pts[first].Delta_e : edge(first - 1, first);
        b.hi = b.clipped_hi ? pts[k].Delta_e : edge(k + 1, k);
        out.push_back(b);
    }
    return out;
}

} // namespace

std::string flags_to_string(std::uint32_t flags)
{
    std::string out;
    for (const auto& [bit, name] : flag_names) {
        if (flags & bit) {
            if (!out.empty())
                out += '|';
            out += name;
        }
    }
    return out;
}

std::uint32_t flags_from_string(const std::string& text)
{
    std::uint32_t flags = flag_none;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('|', start);
        if (end == std::string::npos)
            end = text.size();
        const std::string token = text.substr(start, end - start);
        bool known = false;
        for (const auto& [bit, name] : flag_names) {
            if (token == name) {
                flags |= bit;
                known = true;
            }
        }
        if (!known)
            throw ConfigError("ConfigError: unknown point flag '" + token + "'");
        start = end + 1;
    }
    return flags;
}

const char* to_string(Predicate predicate)
{
    switch (predicate) {
    case Predicate::neg_eps: return "neg_eps";
    case Predicate::neg_mu: return "neg_mu";
    case Predicate::double_negative: return "double_negative";
    }
    return "?";
}

double rabi_to_si(double omega, const SystemParameters& params)
{
    const double scale = params.rabi_angular ? 2.0 * std::numbers::pi : 1.0;
    return omega * params.gamma_unit * scale;
}

std::complex<double> polarizability(std::complex<double> rho23, const SystemParameters& p)
{
    if (p.Omega_e == 0.0)
        throw DivisionByZero("polarizability (Omega_e = 0)", p.Delta_e);
    const double prefactor = p.d32 * p.d32 / (p.eps0 * p.hbar * rabi_to_si(p.Omega_e, p));
    return prefactor * std::conj(rho23);
}

std::complex<double> magnetizability(std::complex<double> rho24, const SystemParameters& p)
{
    if (p.Omega_b == 0.0)
        throw DivisionByZero("magnetizability (Omega_b = 0)", p.Delta_e);
    const double prefactor = p.mu0 * p.mu42 * p.mu42 / (p.hbar * rabi_to_si(p.Omega_b, p));
    return prefactor * rho24;
}

std::complex<double> clausius_mossotti(double N, std::complex<double> alpha)
{
    const std::complex<double> n_alpha = N * alpha;
    const std::complex<double> den = 1.0 - n_alpha / 3.0;
    if (std::abs(den) < 1e-12)
        throw PoleEncountered(n_alpha);
    return (1.0 + 2.0 * n_alpha / 3.0) / den;
}

std::complex<double> refractive_index(std::complex<double> eps_r, std::complex<double> mu_r)
{
    return std::sqrt(eps_r) * std::sqrt(mu_r);
}

ResponsePoint make_response(double Delta_e, std::complex<double> rho23, std::complex<double> rho24,
                            const SystemParameters& params)
{
    ResponsePoint pt;
    pt.Delta_e = Delta_e;
    pt.alpha_e = polarizability(rho23, params);
    pt.alpha_m = magnetizability(rho24, params);
    try {
        pt.eps_r = clausius_mossotti(params.N, pt.alpha_e);
    } catch (const PoleEncountered&) {
        pt.eps_r = nan_c;
        pt.flags |= flag_pole_eps;
    }
    try {
        pt.mu_r = clausius_mossotti(params.N, pt.alpha_m);
    } catch (const PoleEncountered&) {
        pt.mu_r = nan_c;
        pt.flags |= flag_pole_mu;
    }
    pt.n = (pt.flags & (flag_pole_eps | flag_pole_mu)) ? nan_c : refractive_index(pt.eps_r, pt.mu_r);
    return pt;
}

std::vector<Band> detect_bands(std::span<const ResponsePoint> points, Predicate predicate)
{
    if (points.size() < 2)
        throw TooFewPoints("TooFewPoints: band detection needs at least 2 points");
    for (std::size_t k = 1; k < points.size(); ++k)
        if (!(points[k - 1].Delta_e < points[k].Delta_e))
            throw std::invalid_argument("detect_bands: points must be strictly sorted by Delta_e");

    if (predicate != Predicate::double_negative) {
        const Value value = predicate == Predicate::neg_eps ? re_eps : re_mu;
        return scan(
            points, predicate, [&](std::size_t k) { return negative(points, value, k); },
            [&](std::size_t a, std::size_t b) { return crossing(points, value, a, b); });
    }

    // At each edge the quantity that turns non-negative sets the crossing;
    // when both do, the crossing closer to the band interior wins.
    return scan(
        points, predicate,
        [&](std::size_t k) { return negative(points, re_eps, k) && negative(points, re_mu, k); },
        [&](std::size_t a, std::size_t b) {
            const bool eps_off = !negative(points, re_eps, a);
            const bool mu_off = !negative(points, re_mu, a);
            const double xe = crossing(points, re_eps, a, b);
            const double xm = crossing(points, re_mu, a, b);
            if (eps_off && mu_off)
                return a < b ? std::max(xe, xm) : std::min(xe, xm);
            return eps_off ? xe : xm;
        });
}

double total_width(std::span<const Band> bands)
{
    double w = 0.0;
    for (const auto& b : bands)
        w += b.width();
    return w;
}

} // namespace lefthand
