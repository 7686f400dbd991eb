#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lefthand/atomic_model.hpp"
#include "lefthand/errors.hpp"

namespace lefthand {

template <typename Real>
using RhoMatrix = Eigen::Matrix<std::complex<Real>, 4, 4>;

template <typename Real>
using LiouvilleMatrix = Eigen::Matrix<std::complex<Real>, 16, 16>;

template <typename Real>
using LiouvilleVector = Eigen::Matrix<std::complex<Real>, 16, 1>;

/// Column-stacked position of rho_ij, levels labelled 1..4.
constexpr int vec_index(int i, int j)
{
    return (i - 1) + 4 * (j - 1);
}

template <typename Real>
LiouvilleVector<Real> vec(const RhoMatrix<Real>& rho)
{
    return Eigen::Map<const LiouvilleVector<Real>>(rho.data());
}

template <typename Real>
RhoMatrix<Real> unvec(const LiouvilleVector<Real>& v)
{
    return Eigen::Map<const RhoMatrix<Real>>(v.data());
}

/// 4x4 density matrix. Element access uses level labels 1..4.
template <typename Real>
struct BasicDensityMatrix
{
    RhoMatrix<Real> rho = RhoMatrix<Real>::Zero();

    std::complex<Real> operator()(int i, int j) const { return rho(i - 1, j - 1); }
    std::complex<Real>& operator()(int i, int j) { return rho(i - 1, j - 1); }

    Real population(int i) const { return rho(i - 1, i - 1).real(); }

    /// |1><1|
    static BasicDensityMatrix ground()
    {
        BasicDensityMatrix d;
        d.rho(0, 0) = Real(1);
        return d;
    }

    static BasicDensityMatrix populations(Real p1, Real p2, Real p3, Real p4)
    {
        BasicDensityMatrix d;
        d.rho.diagonal() << p1, p2, p3, p4;
        return d;
    }
};

using DensityMatrix = BasicDensityMatrix<double>;

template <typename Real>
struct DensityDiagnostics
{
    Real hermiticity_error; ///< max |rho_ij - conj(rho_ji)|
    Real trace_error;       ///< |tr rho - 1|
    Real min_population;
    Real max_population;

    bool physical(Real tol) const
    {
        return hermiticity_error <= tol && trace_error <= tol && min_population >= -tol &&
               max_population <= Real(1) + tol;
    }
};

template <typename Real>
DensityDiagnostics<Real> diagnose(const RhoMatrix<Real>& rho)
{
    DensityDiagnostics<Real> d;
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - std::complex<Real>(1));
    d.min_population = rho.diagonal().real().minCoeff();
    d.max_population = rho.diagonal().real().maxCoeff();
    return d;
}

enum class GeneratorVariant
{
    /// The nine printed equations, rho_22 from the trace, the rest by conjugation.
    verbatim,
    /// -i[H, rho] plus Lindblad decay and pump terms with coefficients read off
    /// the printed coherence equations.
    hermitized,
};

const char* to_string(GeneratorVariant variant);
GeneratorVariant parse_variant(const std::string& text);

template <typename Real>
struct BasicGenerator
{
    LiouvilleMatrix<Real> L;
    GeneratorVariant variant;

    RhoMatrix<Real> operator()(const RhoMatrix<Real>& rho) const
    {
        return unvec<Real>(L * vec<Real>(rho));
    }
};

using Generator = BasicGenerator<double>;

namespace detail {

template <typename Real>
LiouvilleMatrix<Real> kron(const RhoMatrix<Real>& a, const RhoMatrix<Real>& b)
{
    LiouvilleMatrix<Real> out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.template block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

template <typename Real>
RhoMatrix<Real> ket_bra(int a, int b)
{
    RhoMatrix<Real> m = RhoMatrix<Real>::Zero();
    m(a - 1, b - 1) = Real(1);
    return m;
}

template <typename Real>
LiouvilleMatrix<Real> verbatim_generator(const SystemParameters& p)
{
    using C = std::complex<Real>;
    const C I(0, 1);
    const Real Oc = p.Omega_c, Oe = p.Omega_e, Ob = p.Omega_b;
    const Real g1 = p.gamma1, g2 = p.gamma2, g3 = p.gamma3;
    const Real G1 = p.Gamma1, G2 = p.Gamma2;
    const Real Dc = p.Delta_c, De = p.Delta_e, Db = p.Delta_b, w43 = p.omega43;

    LiouvilleMatrix<Real> L = LiouvilleMatrix<Real>::Zero();
    auto add = [&](int i, int j, int a, int b, C c) { L(vec_index(i, j), vec_index(a, b)) += c; };

    add(1, 1, 1, 2, -I * Oc);
    add(1, 1, 2, 1, I * Oc);
    add(1, 1, 2, 2, g1);

    add(3, 3, 3, 2, -I * Oe);
    add(3, 3, 2, 3, I * Oe);
    add(3, 3, 2, 2, G1);
    add(3, 3, 3, 3, -g2);

    add(4, 4, 4, 2, -I * Ob);
    add(4, 4, 2, 4, I * Ob);
    add(4, 4, 2, 2, G2);
    add(4, 4, 4, 4, -g3);

    add(1, 2, 1, 3, -I * Oe);
    add(1, 2, 1, 4, -I * Ob);
    add(1, 2, 1, 1, -I * Oc);
    add(1, 2, 2, 2, I * Oc);
    add(1, 2, 1, 2, -((g1 + G1 + G2) / 2 + I * Dc));

    add(1, 3, 1, 2, -I * Oe);
    add(1, 3, 2, 3, I * Oc);
    add(1, 3, 1, 3, -((g2 + I * w43) / Real(2) + I * De + I * Dc));

    add(1, 4, 1, 2, -I * Ob);
    add(1, 4, 2, 4, I * Oc);
    add(1, 4, 1, 4, -((g3 - I * w43) / Real(2) + I * Db + I * Dc));

    add(2, 3, 2, 2, -I * Oe);
    add(2, 3, 3, 3, I * Oe);
    add(2, 3, 1, 3, I * Oc);
    add(2, 3, 4, 3, I * Ob);
    add(2, 3, 2, 3, -((g1 + g2 + G1 + G2 + I * w43) / Real(2) + I * De));

    add(2, 4, 2, 2, -I * Ob);
    add(2, 4, 4, 4, I * Ob);
    add(2, 4, 1, 4, I * Oc);
    add(2, 4, 3, 4, I * Oe);
    add(2, 4, 2, 4, -((g1 + g2 + G1 + G2 - I * w43) / Real(2) + I * Db));

    // Printed as-is, including Omega_e on rho_32.
    add(3, 4, 2, 4, I * Oe);
    add(3, 4, 3, 2, -I * Oe);
    add(3, 4, 3, 4, -((g2 + g3) / Real(2) - I * w43));

    // Trace closure.
    L.row(vec_index(2, 2)) = -(L.row(vec_index(1, 1)) + L.row(vec_index(3, 3)) + L.row(vec_index(4, 4)));

    // d/dt rho_ji = conj(d/dt rho_ij), with conj(rho_ab) = rho_ba.
    const int pairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (const auto& pr : pairs) {
        const int i = pr[0], j = pr[1];
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b)
                L(vec_index(j, i), vec_index(b, a)) = std::conj(L(vec_index(i, j), vec_index(a, b)));
    }
    return L;
}

} // namespace detail

/// Rotating-frame Hamiltonian (hbar = 1, gamma units) behind the hermitized
/// generator. Level energies follow from the rho_12, rho_13 and rho_14
/// rotation frequencies with E_1 = 0.
template <typename Real>
RhoMatrix<Real> hamiltonian(const SystemParameters& p)
{
    RhoMatrix<Real> H = RhoMatrix<Real>::Zero();
    H(1, 1) = -Real(p.Delta_c);
    H(2, 2) = -Real(p.omega43 / 2 + p.Delta_e + p.Delta_c);
    H(3, 3) = -Real(-p.omega43 / 2 + p.Delta_b + p.Delta_c);
    H(0, 1) = H(1, 0) = -Real(p.Omega_c);
    H(1, 2) = H(2, 1) = -Real(p.Omega_e);
    H(1, 3) = H(3, 1) = -Real(p.Omega_b);
    return H;
}

template <typename Real = double>
BasicGenerator<Real> build_generator(const SystemParameters& p, GeneratorVariant variant)
{
    if (variant == GeneratorVariant::verbatim)
        return {detail::verbatim_generator<Real>(p), variant};

    using detail::kron;
    using detail::ket_bra;
    using C = std::complex<Real>;
    const RhoMatrix<Real> id = RhoMatrix<Real>::Identity();
    const RhoMatrix<Real> H = hamiltonian<Real>(p);

    LiouvilleMatrix<Real> L = C(0, -1) * (kron<Real>(id, H) - kron<Real>(H.transpose(), id));

    struct Jump { int to, from; double rate; };
    const Jump jumps[] = {
        {1, 2, p.gamma1}, {2, 3, p.gamma2}, {2, 4, p.gamma3}, {3, 2, p.Gamma1}, {4, 2, p.Gamma2},
    };
    for (const auto& jump : jumps) {
        const RhoMatrix<Real> c = ket_bra<Real>(jump.to, jump.from);
        const RhoMatrix<Real> cdc = c.adjoint() * c;
        L += Real(jump.rate) * (kron<Real>(c.conjugate(), c) - Real(0.5) * kron<Real>(id, cdc) -
                                Real(0.5) * kron<Real>(cdc.transpose(), id));
    }
    return {L, variant};
}

/// Fixed-step classical Runge-Kutta integration of d(vec rho)/dt = L vec rho.
/// Time is in units of 1/gamma. The step is shrunk so it divides t_final.
template <typename Real>
BasicDensityMatrix<Real> evolve(const BasicGenerator<Real>& gen, const BasicDensityMatrix<Real>& rho0, Real t_final,
                                Real dt)
{
    if (!(dt > 0) || !(t_final >= 0))
        throw std::invalid_argument("evolve: need dt > 0 and t_final >= 0");
    if (!diagnose<Real>(rho0.rho).physical(Real(1e-12)))
        throw NonPhysical("NonPhysical: initial state is not a density matrix");
    if (t_final == 0)
        return rho0;

    const auto steps = static_cast<long long>(std::ceil(t_final / dt));
    const Real h = t_final / Real(steps);
    const std::complex<Real> trace0 = rho0.rho.trace();

    LiouvilleVector<Real> y = vec<Real>(rho0.rho);
    LiouvilleVector<Real> k1, k2, k3, k4, tmp;
    auto trace_of = [](const LiouvilleVector<Real>& v) { return v(0) + v(5) + v(10) + v(15); };

    for (long long s = 0; s < steps; ++s) {
        k1.noalias() = gen.L * y;
        tmp = y + (h / 2) * k1;
        k2.noalias() = gen.L * tmp;
        tmp = y + (h / 2) * k2;
        k3.noalias() = gen.L * tmp;
        tmp = y + h * k3;
        k4.noalias() = gen.L * tmp;
        y += (h / 6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);

        const Real drift = std::abs(trace_of(y) - trace0);
        if (!(drift <= Real(1e-6)) || !y.allFinite())
            throw StepTooLarge(static_cast<double>(h * Real(s + 1)), static_cast<double>(drift));
    }
    const Real drift = std::abs(trace_of(y) - trace0);
    if (drift > Real(1e-9))
        throw StepTooLarge(static_cast<double>(t_final), static_cast<double>(drift));
    return {unvec<Real>(y)};
}

/// Row of L replaced by the trace constraint in steady_state().
inline constexpr int trace_row = vec_index(1, 1);

/// max |(L vec rho)_k| over every row except the trace-replaced one.
template <typename Real>
Real steady_state_residual(const BasicGenerator<Real>& gen, const BasicDensityMatrix<Real>& rho)
{
    LiouvilleVector<Real> r = gen.L * vec<Real>(rho.rho);
    r(trace_row) = 0;
    return r.cwiseAbs().maxCoeff();
}

/// Solves L vec(rho) = 0 with tr(rho) = 1 by dense LU with partial pivoting.
template <typename Real>
BasicDensityMatrix<Real> steady_state(const BasicGenerator<Real>& gen)
{
    LiouvilleMatrix<Real> A = gen.L;
    A.row(trace_row).setZero();
    for (int i = 1; i <= 4; ++i)
        A(trace_row, vec_index(i, i)) = Real(1);
    LiouvilleVector<Real> b = LiouvilleVector<Real>::Zero();
    b(trace_row) = Real(1);

    const Eigen::PartialPivLU<LiouvilleMatrix<Real>> lu(A);
    // The Hager estimate breaks down on exactly zero pivots, so bound it by
    // the pivot spread as well.
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const Real rcond = std::min<Real>(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
    if (!(rcond > Real(64) * std::numeric_limits<Real>::epsilon()))
        throw SingularSystem(static_cast<double>(rcond));

    LiouvilleVector<Real> x = lu.solve(b);
    x += lu.solve(b - A * x); // one refinement sweep
    if (!x.allFinite())
        throw SingularSystem(static_cast<double>(rcond));

    BasicDensityMatrix<Real> out{unvec<Real>(x)};
    if (steady_state_residual(gen, out) > Real(1e-10))
        throw SingularSystem(static_cast<double>(rcond));

    const auto d = diagnose<Real>(out.rho);
    if (d.min_population < Real(-1e-9) || d.max_population > Real(1) + Real(1e-9))
        throw NonPhysical("NonPhysical: steady-state population outside [0, 1]");
    return out;
}

/// Row-wise comparison of the two generator variants.
struct VariantDiscrepancy
{
    std::string row; ///< e.g. "rho_34"
    double max_abs;  ///< largest coefficient difference in that row
};

std::vector<VariantDiscrepancy> variant_discrepancies(const SystemParameters& params, double tol = 1e-12);

// Weak-probe closed forms, evaluated exactly as printed.

/// 2i Omega_c / (gamma1 + Gamma1 + Gamma2 - 2i Delta_c)
std::complex<double> rho21_weak(const SystemParameters& params);
std::complex<double> rho23_weak(const SystemParameters& params);
std::complex<double> rho24_weak(const SystemParameters& params);

/// False when Omega_c < 10 max(Omega_e, Omega_b).
bool weak_probe_regime(const SystemParameters& params);

} // namespace lefthand
