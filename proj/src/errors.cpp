#include "lefthand/errors.hpp"

#include <sstream>

namespace lefthand {

ValidationError::ValidationError(Kind kind, std::string field)
    : Error(std::string(kind_name(kind)) + "(" + field + ")"), m_kind(kind), m_field(std::move(field))
{
}

const char* ValidationError::kind_name(Kind kind)
{
    switch (kind) {
    case Kind::NegativeRate: return "NegativeRate";
    case Kind::NonPositiveUnit: return "NonPositiveUnit";
    case Kind::NegativeDensity: return "NegativeDensity";
    case Kind::NegativeRabi: return "NegativeRabi";
    case Kind::NonPositiveMoment: return "NonPositiveMoment";
    case Kind::NotFinite: return "NotFinite";
    }
    return "Invalid";
}

UnknownPreset::UnknownPreset(const std::string& id)
    : Error("UnknownPreset(" + id + "): valid presets are fig2-a, fig2-b, fig3-c, fig3-d")
{
}

SingularSystem::SingularSystem(double rcond)
    : Error("SingularSystem: reciprocal condition estimate " + std::to_string(rcond)), m_rcond(rcond)
{
}

StepTooLarge::StepTooLarge(double time, double drift)
    : Error([&] {
          std::ostringstream os;
          os << "StepTooLarge: trace drift " << drift << " at t = " << time;
          return os.str();
      }())
{
}

DivisionByZero::DivisionByZero(const std::string& what, double delta_e)
    : Error([&] {
          std::ostringstream os;
          os << "DivisionByZero in " << what << " at Delta_e = " << delta_e;
          return os.str();
      }()),
      m_delta_e(delta_e)
{
}

PoleEncountered::PoleEncountered(std::complex<double> n_alpha)
    : Error([&] {
          std::ostringstream os;
          os << "PoleEncountered: N*alpha = " << n_alpha;
          return os.str();
      }()),
      m_n_alpha(n_alpha)
{
}

IoError::IoError(const std::string& path, const std::string& what)
    : Error("IoError(" + path + "): " + what)
{
}

} // namespace lefthand
