#include "lefthand/atomic_model.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lefthand {

namespace {

struct Field
{
    const char* name;
    double SystemParameters::*member;
};

using P = SystemParameters;

constexpr std::array<Field, 16> fields{{
    {"gamma_unit", &P::gamma_unit},
    {"gamma1", &P::gamma1},
    {"gamma2", &P::gamma2},
    {"gamma3", &P::gamma3},
    {"Gamma1", &P::Gamma1},
    {"Gamma2", &P::Gamma2},
    {"Omega_c", &P::Omega_c},
    {"Omega_e", &P::Omega_e},
    {"Omega_b", &P::Omega_b},
    {"Delta_c", &P::Delta_c},
    {"Delta_e", &P::Delta_e},
    {"Delta_b", &P::Delta_b},
    {"omega43", &P::omega43},
    {"N", &P::N},
    {"d32", &P::d32},
    {"mu42", &P::mu42},
}};

constexpr std::size_t field_count = fields.size();
constexpr const char* rabi_key = "rabi_angular";

using Kind = ValidationError::Kind;

void require(bool ok, Kind kind, const char* field)
{
    if (!ok)
        throw ValidationError(kind, field);
}

constexpr std::array<std::string_view, 4> ids{"fig2-a", "fig2-b", "fig3-c", "fig3-d"};

} // namespace

const SystemParameters& validate(const SystemParameters& p)
{
    for (std::size_t i = 0; i < field_count; ++i)
        require(std::isfinite(p.*fields[i].member), Kind::NotFinite, fields[i].name);

    require(p.gamma_unit > 0.0, Kind::NonPositiveUnit, "gamma_unit");
    require(p.gamma1 >= 0.0, Kind::NegativeRate, "gamma1");
    require(p.gamma2 >= 0.0, Kind::NegativeRate, "gamma2");
    require(p.gamma3 >= 0.0, Kind::NegativeRate, "gamma3");
    require(p.Gamma1 >= 0.0, Kind::NegativeRate, "Gamma1");
    require(p.Gamma2 >= 0.0, Kind::NegativeRate, "Gamma2");
    require(p.Omega_c >= 0.0, Kind::NegativeRabi, "Omega_c");
    require(p.Omega_e >= 0.0, Kind::NegativeRabi, "Omega_e");
    require(p.Omega_b >= 0.0, Kind::NegativeRabi, "Omega_b");
    require(p.N >= 0.0, Kind::NegativeDensity, "N");
    require(p.d32 > 0.0, Kind::NonPositiveMoment, "d32");
    require(p.mu42 > 0.0, Kind::NonPositiveMoment, "mu42");
    return p;
}

std::vector<LinkageRule> default_linkage_rules()
{
    return {
        {&P::Gamma1, &P::Gamma2, 1.5, "Gamma1 = 1.5 * Gamma2"},
        {&P::Delta_b, &P::Delta_e, -1.5, "Delta_b = -1.5 * Delta_e"},
    };
}

std::span<const std::string_view> preset_ids()
{
    return ids;
}

ScenarioPreset preset(std::string_view id)
{
    SystemParameters base;
    base.Omega_e = 0.5;
    base.Omega_c = 22.5;
    base.Delta_c = -0.25;
    base.N = 1.04e21;

    if (id == "fig2-a") {
    } else if (id == "fig2-b") {
        base.N = 1.5 * 1.04e21;
    } else if (id == "fig3-c") {
        base.Omega_c = 28.0;
        base.Delta_c = 0.25;
    } else if (id == "fig3-d") {
        base.Omega_c = 32.0;
        base.Delta_c = 0.25;
    } else {
        throw UnknownPreset(std::string(id));
    }
    return {std::string(id), base, {0.0, 0.4, 0.6, 0.8}, default_linkage_rules()};
}

ScenarioPreset custom_scenario(std::string id, const SystemParameters& base)
{
    return {std::move(id), base, {0.0, 0.4, 0.6, 0.8}, default_linkage_rules()};
}

SystemParameters apply_linkages(const ScenarioPreset& preset, double Delta_e, double Gamma2)
{
    SystemParameters p = preset.base;
    p.Delta_e = Delta_e;
    p.Gamma2 = Gamma2;
    for (const auto& rule : preset.linkage_rules)
        p.*rule.target = rule.factor * (p.*rule.source);
    validate(p);
    return p;
}

std::vector<std::string> parameter_field_names()
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < field_count; ++i)
        names.emplace_back(fields[i].name);
    names.emplace_back(rabi_key);
    return names;
}

SystemParameters parse_parameters(std::string_view text, const SystemParameters& base)
{
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ConfigError("ConfigError: empty parameter file");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("ConfigError: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("ConfigError: parameter file must hold a flat key-value object");

    SystemParameters p = base;
    for (const auto& [key, value] : doc.items()) {
        if (key == rabi_key) {
            if (!value.is_boolean())
                throw ConfigError("ConfigError: field '" + key + "' expects true or false");
            p.rabi_angular = value.get<bool>();
            continue;
        }
        const Field* match = nullptr;
        for (std::size_t i = 0; i < field_count; ++i)
            if (key == fields[i].name)
                match = &fields[i];
        if (match == nullptr)
            throw ConfigError("ConfigError: unknown key '" + key + "'");
        if (!value.is_number())
            throw ConfigError("ConfigError: field '" + key + "' expects a number");
        p.*match->member = value.get<double>();
    }
    return p;
}

SystemParameters load_parameters(const std::string& path, const SystemParameters& base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path, "cannot open parameter file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_parameters(buffer.str(), base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string serialize_parameters(const SystemParameters& p)
{
    nlohmann::ordered_json doc;
    for (std::size_t i = 0; i < field_count; ++i)
        doc[fields[i].name] = p.*fields[i].member;
    doc[rabi_key] = p.rabi_angular;
    return doc.dump(2) + "\n";
}

} // namespace lefthand
