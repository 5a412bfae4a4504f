#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcskit/dists.hpp"
#include "rcskit/gof.hpp"
#include "rcskit/montecarlo.hpp"
#include "rcskit/nf_rcs.hpp"
#include "rcskit/waveform.hpp"

namespace rcskit {

inline constexpr const char* kToolVersion = "rcskit 0.1.0";

struct SampleKey {
    std::string target_id;
    double frequency_ghz = 0.0;
    double theta_b_deg = 0.0;

    friend auto operator<=>(const SampleKey&, const SampleKey&) = default;
};

using SampleGroups = std::map<SampleKey, SampleSet>;

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Reads `target_id,frequency_ghz,theta_b_deg,rcs_m2`. Row order is kept within each group.
/// Throws SchemaError (missing file, header, column count) or ValueError naming the line.
SampleGroups ingest_rcs_csv(const std::filesystem::path& path);
SampleGroups parse_rcs_csv(std::istream& in);
void write_rcs_csv(std::ostream& out, const SampleGroups& groups);

/// Reads `y_m,frequency_ghz,pl_db`; frequency is converted to Hz.
std::vector<PlObservation> ingest_pl_csv(const std::filesystem::path& path);
std::vector<PlObservation> parse_pl_csv(std::istream& in);
void write_pl_csv(std::ostream& out, const std::vector<PlObservation>& observations);

/// CIR capture: `index,re,im` CSV plus a `{frequency_hz, scenario_tag}` JSON sidecar.
CirCapture read_cir_capture(const std::filesystem::path& csv_path, const std::filesystem::path& sidecar_path);
void write_cir_capture(const CirCapture& cir, const std::filesystem::path& csv_path,
                       const std::filesystem::path& sidecar_path);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

nlohmann::json to_json(const DistParams& params);
DistParams dist_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GofReport& report);
nlohmann::json to_json(const FitRanking& ranking);
nlohmann::json to_json(const PathLossFit& fit);
PathLossFit path_loss_fit_from_json(const nlohmann::json& j);

/// ScenarioSpec JSON:
/// {"geometry":{"half_baseline_a":..,"target_offset_y":..},
///  "link":{"tx_power_w":..,"tx_gain":..,"rx_gain":..,"frequency_hz" or "wavelength_m":..,"system_loss":..},
///  "rcs_process":{"family":"lognormal","mu":..,"sigma":..},
///  "n_snapshots":..,"noise_power_w":..,"seed":..,"target_id":..,"families":"all"|[...]}
ScenarioSpec scenario_spec_from_json(const nlohmann::json& j);

/// "all" or a comma-separated list of family names. Throws SchemaError on an unknown name.
std::vector<DistributionFamily> parse_family_list(std::string_view text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace rcskit
