#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lefthand {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A SystemParameters invariant is violated. `field()` names the culprit.
class ValidationError : public Error
{
public:
    enum class Kind { NegativeRate, NonPositiveUnit, NegativeDensity, NegativeRabi, NonPositiveMoment, NotFinite };

    ValidationError(Kind kind, std::string field);

    Kind kind() const { return m_kind; }
    const std::string& field() const { return m_field; }

    static const char* kind_name(Kind kind);

private:
    Kind m_kind;
    std::string m_field;
};

class UnknownPreset : public Error
{
public:
    explicit UnknownPreset(const std::string& id);
};

/// The trace-constrained Liouvillian system has no unique solution.
class SingularSystem : public Error
{
public:
    explicit SingularSystem(double rcond);
    double rcond() const { return m_rcond; }

private:
    double m_rcond;
};

class NonPhysical : public Error
{
public:
    using Error::Error;
};

class StepTooLarge : public Error
{
public:
    StepTooLarge(double time, double drift);
};

/// A printed closed-form expression has a vanishing denominator.
class DivisionByZero : public Error
{
public:
    DivisionByZero(const std::string& what, double delta_e);
    double delta_e() const { return m_delta_e; }

private:
    double m_delta_e;
};

/// 1 - N*alpha/3 vanished in the local-field map.
class PoleEncountered : public Error
{
public:
    explicit PoleEncountered(std::complex<double> n_alpha);
    std::complex<double> n_alpha() const { return m_n_alpha; }

private:
    std::complex<double> m_n_alpha;
};

class TooFewPoints : public Error
{
public:
    using Error::Error;
};

class IncompatibleGrids : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    IoError(const std::string& path, const std::string& what);
};

} // namespace lefthand
