#include "lefthand/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lefthand::io {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fmt(const char* pattern, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(sep, start);
        out.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (end == std::string::npos)
            return out;
        start = end + 1;
    }
}

double parse_number(const std::string& text, std::size_t line)
{
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw ConfigError("ConfigError: line " + std::to_string(line) + ": bad number '" + text + "'");
    return v;
}

std::vector<CoherenceSource> sources_of(const SweepResult& result)
{
    std::vector<CoherenceSource> out;
    for (const auto& t : result.traces)
        if (out.empty() || out.back() != t.source)
            out.push_back(t.source);
    return out;
}

std::string band_list(const std::vector<Band>& bands)
{
    if (bands.empty())
        return "none";
    std::string out;
    for (const auto& b : bands) {
        if (!out.empty())
            out += ' ';
        out += (b.clipped_lo ? "(" : "[") + fmt("%.4f", b.lo) + ", " + fmt("%.4f", b.hi) +
               (b.clipped_hi ? ")" : "]");
    }
    return out;
}

ordered_json band_json(const Band& b)
{
    return {{"predicate", to_string(b.predicate)}, {"lo", b.lo},           {"hi", b.hi},
            {"width", b.width()},                  {"clipped_lo", b.clipped_lo}, {"clipped_hi", b.clipped_hi}};
}

std::string csv_name(const std::string& id, CoherenceSource source)
{
    return id + "_" + to_string(source) + ".csv";
}

} // namespace

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    return fmt("%.17g", value);
}

std::string csv_text(const SweepResult& result, CoherenceSource source)
{
    std::string out = csv_header;
    out += '\n';
    for (const auto& trace : result.traces) {
        if (trace.source != source)
            continue;
        for (const auto& sp : trace.points) {
            const auto& r = sp.response;
            const double cols[] = {r.Delta_e,      trace.Gamma2,  r.eps_r.real(), r.eps_r.imag(),
                                   r.mu_r.real(),  r.mu_r.imag(), r.n.real(),     r.n.imag()};
            for (int c = 0; c < 2; ++c)
                out += format_double(cols[c]) + ',';
            out += to_string(source);
            for (int c = 2; c < 8; ++c)
                out += ',' + format_double(cols[c]);
            out += ',' + flags_to_string(r.flags) + '\n';
        }
    }
    return out;
}

SweepResult parse_csv(const std::string& text, const std::string& id)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw ConfigError("ConfigError: " + id + ": unsupported CSV header (expected schema v" +
                          std::to_string(csv_schema_version) + ")");

    SweepResult result;
    result.spec.scenario.id = id;
    std::size_t line_no = 1;
    std::vector<CoherenceSource> seen_sources;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw ConfigError("ConfigError: " + id + ": line " + std::to_string(line_no) + ": expected 10 columns");
        const CoherenceSource source = parse_source(f[2]);
        const double g = parse_number(f[1], line_no);

        SweepTrace* trace = nullptr;
        for (auto& t : result.traces)
            if (t.source == source && t.Gamma2 == g)
                trace = &t;
        if (trace == nullptr) {
            result.traces.push_back({source, g, {}, {}, {}, {}});
            trace = &result.traces.back();
            if (std::find(seen_sources.begin(), seen_sources.end(), source) == seen_sources.end())
                seen_sources.push_back(source);
            if (std::find(result.spec.Gamma2_values.begin(), result.spec.Gamma2_values.end(), g) ==
                result.spec.Gamma2_values.end())
                result.spec.Gamma2_values.push_back(g);
        }

        SweepPoint sp;
        auto& r = sp.response;
        r.Delta_e = parse_number(f[0], line_no);
        r.eps_r = {parse_number(f[3], line_no), parse_number(f[4], line_no)};
        r.mu_r = {parse_number(f[5], line_no), parse_number(f[6], line_no)};
        r.n = {parse_number(f[7], line_no), parse_number(f[8], line_no)};
        r.alpha_e = r.alpha_m = {std::nan(""), std::nan("")};
        r.flags = flags_from_string(f[9]);
        sp.rho23 = sp.rho24 = {std::nan(""), std::nan("")};
        trace->points.push_back(sp);
        ++result.total_points;
        if (!r.ok())
            ++result.flagged_points;
    }
    if (result.traces.empty())
        throw ConfigError("ConfigError: " + id + ": CSV holds no data rows");

    result.spec.source = seen_sources.size() > 1 ? CoherenceSource::both : seen_sources.front();
    const auto& first = result.traces.front().points;
    result.spec.Delta_e_lo = first.front().response.Delta_e;
    result.spec.Delta_e_hi = first.back().response.Delta_e;
    result.spec.n_points = static_cast<int>(first.size());
    refresh_bands(result);
    return result;
}

SweepResult load_csv(const fs::path& path)
{
    return parse_csv(read_file(path), path.stem().string());
}

std::string sidecar_text(const SweepResult& result)
{
    const auto& spec = result.spec;
    ordered_json doc;
    doc["csv_schema_version"] = csv_schema_version;
    doc["scenario"] = spec.scenario.id;
    doc["parameters"] = ordered_json::parse(serialize_parameters(spec.scenario.base));
    ordered_json rules = ordered_json::array();
    for (const auto& rule : spec.scenario.linkage_rules)
        rules.push_back(rule.text);
    doc["linkage_rules"] = rules;
    doc["gamma2_values"] = spec.Gamma2_values;
    doc["delta_e_range"] = {{"lo", spec.Delta_e_lo}, {"hi", spec.Delta_e_hi}, {"points", spec.n_points}};
    doc["source"] = to_string(spec.source);
    doc["generator_variant"] = to_string(spec.generator_variant);

    ordered_json files = ordered_json::array();
    for (auto s : sources_of(result))
        files.push_back(csv_name(spec.scenario.id, s));
    doc["csv_files"] = files;

    doc["weak_probe_ok"] = result.weak_probe_ok;
    doc["flagged_points"] = result.flagged_points;
    doc["total_points"] = result.total_points;

    ordered_json traces = ordered_json::array();
    for (const auto& t : result.traces) {
        ordered_json bands = ordered_json::array();
        for (Predicate p : {Predicate::neg_eps, Predicate::neg_mu, Predicate::double_negative})
            for (const auto& b : t.bands(p))
                bands.push_back(band_json(b));
        traces.push_back({{"source", to_string(t.source)}, {"gamma2", t.Gamma2}, {"bands", bands}});
    }
    doc["traces"] = traces;

    ordered_json disc = ordered_json::array();
    for (const auto& d : result.discrepancies)
        disc.push_back({{"gamma2", d.Gamma2},
                        {"max_abs_rho23", d.max_abs_rho23},
                        {"at_delta_e_rho23", d.at_Delta_e_rho23},
                        {"max_abs_rho24", d.max_abs_rho24},
                        {"at_delta_e_rho24", d.at_Delta_e_rho24}});
    doc["discrepancies"] = disc;

    ordered_json notes = ordered_json::array();
    for (const auto& v : result.variant_notes)
        notes.push_back({{"row", v.row}, {"max_abs", v.max_abs}});
    doc["variant_discrepancies"] = notes;
    doc["elapsed_seconds"] = result.elapsed_seconds;
    return doc.dump(2) + "\n";
}

SweepResult load_result(const fs::path& path)
{
    if (path.extension() != ".json")
        return load_csv(path);

    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
        SweepResult merged;
        for (const auto& name : doc.at("csv_files")) {
            SweepResult part = load_csv(path.parent_path() / name.get<std::string>());
            for (auto& t : part.traces)
                merged.traces.push_back(std::move(t));
            merged.total_points += part.total_points;
            merged.flagged_points += part.flagged_points;
        }
        auto& spec = merged.spec;
        spec.scenario = custom_scenario(doc.at("scenario").get<std::string>(),
                                        parse_parameters(doc.at("parameters").dump()));
        spec.Gamma2_values = doc.at("gamma2_values").get<std::vector<double>>();
        spec.Delta_e_lo = doc.at("delta_e_range").at("lo").get<double>();
        spec.Delta_e_hi = doc.at("delta_e_range").at("hi").get<double>();
        spec.n_points = doc.at("delta_e_range").at("points").get<int>();
        spec.source = parse_source(doc.at("source").get<std::string>());
        spec.generator_variant = parse_variant(doc.at("generator_variant").get<std::string>());
        merged.weak_probe_ok = doc.value("weak_probe_ok", true);
        refresh_bands(merged);
        return merged;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("ConfigError: " + path.string() + ": " + e.what());
    }
}

std::string band_report(const SweepResult& result)
{
    const auto& spec = result.spec;
    std::ostringstream os;
    os << "band report\n";
    os << "scenario: " << spec.scenario.id << "\n";
    os << "source: " << to_string(spec.source) << "  generator: " << to_string(spec.generator_variant) << "\n";
    os << "grid: Delta_e/gamma in [" << fmt("%.6g", spec.Delta_e_lo) << ", " << fmt("%.6g", spec.Delta_e_hi)
       << "], " << spec.n_points << " points\n";
    os << "pump values Gamma2/gamma:";
    for (double g : spec.Gamma2_values)
        os << ' ' << fmt("%.6g", g);
    os << "\n";
    for (const auto& rule : spec.scenario.linkage_rules)
        os << "linkage: " << rule.text << "\n";
    os << "flagged points: " << result.flagged_points << " of " << result.total_points << "\n";
    if (!result.weak_probe_ok)
        os << "warning: Omega_c < 10 max(Omega_e, Omega_b); weak-probe closed forms are outside their regime\n";
    os << "bands: [lo, hi] in Delta_e/gamma; '(' or ')' marks an edge clipped by the grid window\n";

    for (const auto& t : result.traces) {
        os << "\n[" << to_string(t.source) << "] Gamma2 = " << fmt("%.6g", t.Gamma2) << "\n";
        for (Predicate p : {Predicate::neg_eps, Predicate::neg_mu, Predicate::double_negative}) {
            const auto& bands = t.bands(p);
            char line[64];
            std::snprintf(line, sizeof line, "  %-16s width %10.4f  ", to_string(p), total_width(bands));
            os << line << band_list(bands) << "\n";
        }
        std::size_t k0 = 0;
        for (std::size_t k = 1; k < t.points.size(); ++k)
            if (std::abs(t.points[k].response.Delta_e) < std::abs(t.points[k0].response.Delta_e))
                k0 = k;
        const auto& r = t.points[k0].response;
        os << "  at Delta_e = " << fmt("%.4g", r.Delta_e) << ": Re eps = " << fmt("%.6g", r.eps_r.real())
           << ", Re mu = " << fmt("%.6g", r.mu_r.real()) << ", Re n = " << fmt("%.6g", r.n.real()) << "\n";
    }

    if (!result.discrepancies.empty()) {
        os << "\nanalytical vs numerical coherences\n";
        os << "  Gamma2    max|d rho23|  at Delta_e   max|d rho24|  at Delta_e\n";
        for (const auto& d : result.discrepancies) {
            char line[128];
            std::snprintf(line, sizeof line, "  %-8.4g  %12.6g  %10.4g   %12.6g  %10.4g\n", d.Gamma2, d.max_abs_rho23,
                          d.at_Delta_e_rho23, d.max_abs_rho24, d.at_Delta_e_rho24);
            os << line;
        }
    }
    if (!result.variant_notes.empty()) {
        os << "\ngenerator rows where verbatim and hermitized differ (at the first grid point):\n";
        for (const auto& v : result.variant_notes)
            os << "  " << v.row << "  max coefficient difference " << fmt("%.6g", v.max_abs) << "\n";
    }
    return os.str();
}

std::string comparison_text(const ComparisonReport& report)
{
    std::ostringstream os;
    os << "comparison: a = " << report.id_a << ", b = " << report.id_b << "\n";
    os << "band widths in Delta_e/gamma; '*' marks a width clipped by the grid window\n\n";
    os << "  source      Gamma2   predicate          width(a)     width(b)   a - b\n";
    for (const auto& w : report.widths) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-10s  %-7.4g  %-16s %10.4f%s  %10.4f%s  %+10.4f\n", to_string(w.source),
                      w.Gamma2, to_string(w.predicate), w.width_a, w.clipped_a ? "*" : " ", w.width_b,
                      w.clipped_b ? "*" : " ", w.delta());
        os << line;
    }
    os << "\nresonance values\n";
    os << "  source      Gamma2   Delta_e   Re eps(a)    Re eps(b)    Re mu(a)     Re mu(b)     Re n(a)      Re n(b)\n";
    for (const auto& r : report.resonance) {
        char line[200];
        std::snprintf(line, sizeof line, "  %-10s  %-7.4g  %-8.4g  %-11.6g  %-11.6g  %-11.6g  %-11.6g  %-11.6g  %-11.6g\n",
                      to_string(r.source), r.Gamma2, r.Delta_e, r.re_eps_a, r.re_eps_b, r.re_mu_a, r.re_mu_b, r.re_n_a,
                      r.re_n_b);
        os << line;
    }
    return os.str();
}

std::string comparison_csv(const ComparisonReport& report)
{
    std::string out = "source,gamma2_over_gamma,predicate,width_a,width_b,delta,clipped_a,clipped_b\n";
    for (const auto& w : report.widths) {
        out += std::string(to_string(w.source)) + ',' + format_double(w.Gamma2) + ',' + to_string(w.predicate) + ',' +
               format_double(w.width_a) + ',' + format_double(w.width_b) + ',' + format_double(w.delta()) + ',' +
               (w.clipped_a ? "1" : "0") + ',' + (w.clipped_b ? "1" : "0") + '\n';
    }
    return out;
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    out << text;
    out.close();
    if (!out)
        throw IoError(path.string(), "write failed");
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path.string(), "cannot open for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace lefthand::io
