#include "lefthand/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lefthand/io.hpp"

namespace lefthand::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOptions
{
    std::string preset;
    std::string config;
};

struct RunOptions
{
    int points = 801;
    std::string range = "-10:10";
    std::string gamma2;
    std::string source = "both";
    std::string variant = "verbatim";
    std::string out;
    bool no_svg = false;
    bool no_csv = false;
    bool no_report = false;
    unsigned threads = 0;
};

ScenarioPreset resolve_scenario(const CommonOptions& opts)
{
    ScenarioPreset scenario;
    if (!opts.preset.empty())
        scenario = preset(opts.preset);
    else if (!opts.config.empty())
        scenario = custom_scenario(fs::path(opts.config).stem().string(), SystemParameters{});
    else
        throw ConfigError("ConfigError: one of --preset or --config is required");

    if (!opts.config.empty())
        scenario.base = load_parameters(opts.config, scenario.base);
    validate(scenario.base);
    return scenario;
}

std::pair<double, double> parse_range(const std::string& text)
{
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos)
        throw ConfigError("ConfigError: --range expects LO:HI, got '" + text + "'");
    try {
        std::size_t used_lo = 0, used_hi = 0;
        const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
        const double a = std::stod(lo, &used_lo), b = std::stod(hi, &used_hi);
        if (used_lo != lo.size() || used_hi != hi.size())
            throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw ConfigError("ConfigError: --range expects LO:HI, got '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigError("ConfigError: --gamma2 expects comma-separated numbers, got '" + text + "'");
        }
    }
    return values;
}

fs::path output_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("LEFTHAND_SIM_OUT"); env != nullptr && *env != '\0')
        return env;
    return "lefthand-out";
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError(dir.string(), "cannot create output directory");
}

int cmd_run(const CommonOptions& common, const RunOptions& opts, std::ostream& out, std::ostream& err)
{
    if (opts.no_csv && opts.no_svg && opts.no_report)
        throw ConfigError("ConfigError: every export is disabled; nothing to do");

    SweepSpec spec = default_spec(resolve_scenario(common));
    std::tie(spec.Delta_e_lo, spec.Delta_e_hi) = parse_range(opts.range);
    spec.n_points = opts.points;
    if (!opts.gamma2.empty())
        spec.Gamma2_values = parse_list(opts.gamma2);
    spec.source = parse_source(opts.source);
    spec.generator_variant = parse_variant(opts.variant);
    spec.threads = opts.threads;
    validate(spec);

    const fs::path dir = output_dir(opts.out);
    ensure_dir(dir);

    const SweepResult result = run_sweep(spec);
    if (!result.weak_probe_ok)
        err << "warning: Omega_c < 10 max(Omega_e, Omega_b); weak-probe closed forms are outside their regime\n";

    const std::string& id = spec.scenario.id;
    std::vector<CoherenceSource> sources;
    if (spec.source == CoherenceSource::both)
        sources = {CoherenceSource::analytical, CoherenceSource::numerical};
    else
        sources = {spec.source};

    std::vector<fs::path> written;
    auto emit = [&](const fs::path& path, const std::string& text) {
        io::write_file(path, text);
        written.push_back(path);
    };

    if (!opts.no_csv) {
        for (auto s : sources)
            emit(dir / (id + "_" + to_string(s) + ".csv"), io::csv_text(result, s));
        emit(dir / (id + ".json"), io::sidecar_text(result));
    }
    if (!opts.no_svg)
        for (auto s : sources)
            for (auto q : {io::Quantity::eps, io::Quantity::mu, io::Quantity::n})
                emit(dir / (id + "_" + to_string(s) + "_" + io::to_string(q) + ".svg"), io::render_svg(result, s, q));
    if (!opts.no_report)
        emit(dir / (id + "_report.txt"), io::band_report(result));

    for (const auto& path : written)
        out << "wrote " << path.string() << "\n";
    out << "flagged points: " << result.flagged_points << " of " << result.total_points << "\n";
    return result.flagged_points > 0 ? exit_partial : exit_ok;
}

int cmd_validate(const CommonOptions& common, std::ostream& out)
{
    const ScenarioPreset scenario = resolve_scenario(common);
    const double first = scenario.pump_values.empty() ? 0.0 : scenario.pump_values.front();
    const SystemParameters resolved = apply_linkages(scenario, 0.0, first);

    out << "scenario: " << scenario.id << "\n";
    for (const auto& rule : scenario.linkage_rules)
        out << "linkage: " << rule.text << "\n";
    out << "resolved parameters at Delta_e = 0, Gamma2 = " << io::format_double(first) << ":\n";
    out << serialize_parameters(resolved);
    out << "linkage resolution at Delta_e = 0:\n";
    out << "  Gamma2    Gamma1    Delta_e   Delta_b\n";
    for (double g : scenario.pump_values) {
        const SystemParameters p = apply_linkages(scenario, 0.0, g);
        char line[96];
        std::snprintf(line, sizeof line, "  %-8.4g  %-8.4g  %-8.4g  %-8.4g\n", p.Gamma2, p.Gamma1, p.Delta_e, p.Delta_b);
        out << line;
    }
    if (!weak_probe_regime(resolved))
        out << "warning: Omega_c < 10 max(Omega_e, Omega_b)\n";
    out << "ok\n";
    return exit_ok;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& out_flag, std::ostream& out)
{
    const SweepResult ra = io::load_result(a);
    const SweepResult rb = io::load_result(b);
    const ComparisonReport report = compare_scenarios(ra, rb);

    const fs::path dir = output_dir(out_flag);
    ensure_dir(dir);
    const std::string stem = "compare_" + report.id_a + "_vs_" + report.id_b;
    const std::string text = io::comparison_text(report);
    io::write_file(dir / (stem + ".txt"), text);
    io::write_file(dir / (stem + ".csv"), io::comparison_csv(report));
    out << text;
    return exit_ok;
}

} // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Steady-state optical response and left-handed band detection for a driven four-level atom"};
    app.require_subcommand(1);

    CommonOptions run_common, validate_common;
    RunOptions run_opts;
    std::string compare_a, compare_b, compare_out;

    auto* run = app.add_subcommand("run", "Sweep the probe detuning and export CSV, SVG and a band report");
    run->add_option("--preset", run_common.preset, "Built-in scenario: fig2-a, fig2-b, fig3-c, fig3-d");
    run->add_option("--config", run_common.config, "Parameter file (flat JSON, SystemParameters field names)");
    run->add_option("--points", run_opts.points, "Detuning grid points")->capture_default_str();
    run->add_option("--range", run_opts.range, "Detuning window LO:HI in gamma units")->capture_default_str();
    run->add_option("--gamma2", run_opts.gamma2, "Comma-separated Gamma2 values in gamma units");
    run->add_option("--source", run_opts.source, "analytical|numerical|both")->capture_default_str();
    run->add_option("--variant", run_opts.variant, "verbatim|hermitized")->capture_default_str();
    run->add_option("--out", run_opts.out, "Output directory (default $LEFTHAND_SIM_OUT or ./lefthand-out)");
    run->add_option("--threads", run_opts.threads, "Worker threads, 0 = hardware concurrency");
    run->add_flag("--no-svg", run_opts.no_svg, "Skip SVG plots");
    run->add_flag("--no-csv", run_opts.no_csv, "Skip CSV and sidecar export");
    run->add_flag("--no-report", run_opts.no_report, "Skip the band report");

    auto* val = app.add_subcommand("validate", "Parse and validate a configuration without running it");
    val->add_option("--preset", validate_common.preset, "Built-in scenario");
    val->add_option("--config", validate_common.config, "Parameter file");

    auto* cmp = app.add_subcommand("compare", "Compare band widths of two exported results");
    cmp->add_option("a", compare_a, "First result (CSV or sidecar JSON)")->required();
    cmp->add_option("b", compare_b, "Second result (CSV or sidecar JSON)")->required();
    cmp->add_option("--out", compare_out, "Output directory for the comparison files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_failure;
    }

    try {
        if (*run)
            return cmd_run(run_common, run_opts, out, err);
        if (*val)
            return cmd_validate(validate_common, out);
        return cmd_compare(compare_a, compare_b, compare_out, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace lefthand::cli
