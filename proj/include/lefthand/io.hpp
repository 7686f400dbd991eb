#pragma once

#include <filesystem>
#include <string>

#include "lefthand/sweep.hpp"

namespace lefthand::io {

inline constexpr int csv_schema_version = 1;

inline constexpr const char* csv_header =
    "delta_e_over_gamma,gamma2_over_gamma,source,re_eps,im_eps,re_mu,im_mu,re_n,im_n,flags";

/// %.17g, which round-trips every finite double; "nan"/"inf" otherwise.
std::string format_double(double value);

/// Rows for one coherence source, ordered by Gamma2 then Delta_e. LF endings.
std::string csv_text(const SweepResult& result, CoherenceSource source);

/// Parses a CSV export back into a result (responses, flags, bands). Eps,
/// mu and n are restored; polarizabilities and parameter snapshots are not.
SweepResult parse_csv(const std::string& text, const std::string& id);
SweepResult load_csv(const std::filesystem::path& path);

/// Spec snapshot, bands, discrepancy audit and timing as JSON.
std::string sidecar_text(const SweepResult& result);

/// Loads either a CSV export or a sidecar (which pulls in its CSVs).
SweepResult load_result(const std::filesystem::path& path);

std::string band_report(const SweepResult& result);
std::string comparison_text(const ComparisonReport& report);
std::string comparison_csv(const ComparisonReport& report);

enum class Quantity
{
    eps,
    mu,
    n,
};

const char* to_string(Quantity quantity);

/// Re (solid) and Im (dashed) of one quantity against Delta_e/gamma, one
/// colour per Gamma2 trace.
std::string render_svg(const SweepResult& result, CoherenceSource source, Quantity quantity);

/// Writes `text` to `path`, throwing IoError with the path on failure.
void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

} // namespace lefthand::io
