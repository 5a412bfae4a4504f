#include "rcskit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "rcskit/errors.hpp"

namespace rcskit {
namespace {

constexpr const char* kRcsHeader = "target_id,frequency_ghz,theta_b_deg,rcs_m2";
constexpr const char* kPlHeader = "y_m,frequency_ghz,pl_db";
constexpr const char* kCirHeader = "index,re,im";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

double parse_number(const std::string& text, std::size_t line_no, const char* column) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw ValueError("line " + std::to_string(line_no) + ": column " + column + " is not a number: '" + text +
                         "'");
    }
    if (!std::isfinite(v)) {
        throw ValueError("line " + std::to_string(line_no) + ": column " + column + " is not finite");
    }
    return v;
}

void expect_header(std::istream& in, const char* header) {
    std::string line;
    if (!read_line(in, line)) throw SchemaError(std::string("missing header row '") + header + "'");
    if (line != header) {
        throw SchemaError(std::string("expected header '") + header + "', got '" + line + "'");
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open input file " + path.string());
    return in;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

SampleGroups parse_rcs_csv(std::istream& in) {
    expect_header(in, kRcsHeader);
    SampleGroups groups;
    std::string line;
    for (std::size_t line_no = 2; read_line(in, line); ++line_no) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 4) {
            throw SchemaError("line " + std::to_string(line_no) + ": expected 4 columns, got " +
                              std::to_string(f.size()));
        }
        if (f[0].empty()) throw ValueError("line " + std::to_string(line_no) + ": empty target_id");
        SampleKey key{f[0], parse_number(f[1], line_no, "frequency_ghz"), parse_number(f[2], line_no, "theta_b_deg")};
        if (key.frequency_ghz <= 0.0) {
            throw ValueError("line " + std::to_string(line_no) + ": frequency_ghz must be > 0");
        }
        const double rcs = parse_number(f[3], line_no, "rcs_m2");
        if (rcs <= 0.0) throw ValueError("line " + std::to_string(line_no) + ": rcs_m2 must be > 0");
        auto& set = groups[key];
        set.metadata = {key.target_id, key.frequency_ghz, key.theta_b_deg};
        set.values.push_back(rcs);
    }
    return groups;
}

SampleGroups ingest_rcs_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_rcs_csv(in);
}

void write_rcs_csv(std::ostream& out, const SampleGroups& groups) {
    out << kRcsHeader << '\n';
    for (const auto& [key, set] : groups) {
        const std::string prefix =
            key.target_id + ',' + format_double(key.frequency_ghz) + ',' + format_double(key.theta_b_deg) + ',';
        for (double v : set.values) out << prefix << format_double(v) << '\n';
    }
}

std::vector<PlObservation> parse_pl_csv(std::istream& in) {
    expect_header(in, kPlHeader);
    std::vector<PlObservation> out;
    std::string line;
    for (std::size_t line_no = 2; read_line(in, line); ++line_no) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 3) {
            throw SchemaError("line " + std::to_string(line_no) + ": expected 3 columns, got " +
                              std::to_string(f.size()));
        }
        PlObservation o{parse_number(f[0], line_no, "y_m"), parse_number(f[1], line_no, "frequency_ghz") * 1e9,
                        parse_number(f[2], line_no, "pl_db")};
        if (o.y_m <= 0.0) throw ValueError("line " + std::to_string(line_no) + ": y_m must be > 0");
        if (o.frequency_hz <= 0.0) throw ValueError("line " + std::to_string(line_no) + ": frequency_ghz must be > 0");
        out.push_back(o);
    }
    return out;
}

std::vector<PlObservation> ingest_pl_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_pl_csv(in);
}

void write_pl_csv(std::ostream& out, const std::vector<PlObservation>& observations) {
    out << kPlHeader << '\n';
    for (const auto& o : observations) {
        out << format_double(o.y_m) << ',' << format_double(o.frequency_hz / 1e9) << ',' << format_double(o.pl_db)
            << '\n';
    }
}

CirCapture read_cir_capture(const std::filesystem::path& csv_path, const std::filesystem::path& sidecar_path) {
    CirCapture cir;
    {
        auto in = open_input(sidecar_path);
        nlohmann::json meta;
        try {
            in >> meta;
            cir.frequency_hz = meta.at("frequency_hz").get<double>();
            cir.scenario_tag = meta.at("scenario_tag").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("CIR sidecar " + sidecar_path.string() + ": " + e.what());
        }
    }
    auto in = open_input(csv_path);
    expect_header(in, kCirHeader);
    std::string line;
    for (std::size_t line_no = 2; read_line(in, line); ++line_no) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 3) throw SchemaError("line " + std::to_string(line_no) + ": expected 3 columns");
        const double index = parse_number(f[0], line_no, "index");
        if (index != static_cast<double>(cir.taps.size())) {
            throw ValueError("line " + std::to_string(line_no) + ": tap indices must run 0, 1, 2, ...");
        }
        cir.taps.emplace_back(parse_number(f[1], line_no, "re"), parse_number(f[2], line_no, "im"));
    }
    return cir;
}

void write_cir_capture(const CirCapture& cir, const std::filesystem::path& csv_path,
                       const std::filesystem::path& sidecar_path) {
    std::ostringstream csv;
    csv << kCirHeader << '\n';
    for (std::size_t i = 0; i < cir.taps.size(); ++i) {
        csv << i << ',' << format_double(cir.taps[i].real()) << ',' << format_double(cir.taps[i].imag()) << '\n';
    }
    write_text_file(csv_path, csv.str());
    const nlohmann::json meta{{"frequency_hz", cir.frequency_hz}, {"scenario_tag", cir.scenario_tag}};
    write_text_file(sidecar_path, meta.dump(2) + "\n");
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

nlohmann::json to_json(const DistParams& params) {
    nlohmann::json j;
    j["family"] = std::string(family_name(params.family()));
    const auto names = DistParams::parameter_names(params.family());
    for (std::size_t i = 0; i < names.size(); ++i) j[std::string(names[i])] = params[i];
    return j;
}

DistParams dist_params_from_json(const nlohmann::json& j) {
    try {
        const auto name = j.at("family").get<std::string>();
        const auto family = family_from_name(name);
        if (!family) throw SchemaError("unknown distribution family '" + name + "'");
        std::vector<double> values;
        for (auto letter : DistParams::parameter_names(*family)) {
            values.push_back(j.at(std::string(letter)).get<double>());
        }
        return DistParams::make(*family, values);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("distribution parameters: ") + e.what());
    } catch (const DomainError& e) {
        throw SchemaError(std::string("distribution parameters: ") + e.what());
    }
}

nlohmann::json to_json(const GofReport& report) {
    nlohmann::json params = to_json(report.params);
    params.erase("family");
    return {{"family", std::string(family_name(report.family))},
            {"ks", report.ks_stat},
            {"mse", report.mse},
            {"params", params}};
}

nlohmann::json to_json(const FitRanking& ranking) {
    nlohmann::json fits = nlohmann::json::array();
    for (const auto& r : ranking.ranked) fits.push_back(to_json(r));
    nlohmann::json excluded = nlohmann::json::array();
    for (const auto& e : ranking.excluded) {
        excluded.push_back({{"family", std::string(family_name(e.family))}, {"reason", e.message}});
    }
    return {{"fits", fits}, {"excluded", excluded}};
}

nlohmann::json to_json(const PathLossFit& fit) {
    nlohmann::json j{{"frequency_ghz", fit.frequency_hz / 1e9},
                     {"model", std::string(order_name(fit.model.order))},
                     {"alpha", fit.alpha},
                     {"n", fit.n},
                     {"m", fit.model.m},
                     {"a1", fit.model.a1}};
    j["a2"] = fit.model.order == RcsOrder::Sigma1 ? nlohmann::json(nullptr) : nlohmann::json(fit.model.a2);
    j["a3"] = fit.model.order == RcsOrder::Sigma3 ? nlohmann::json(fit.model.a3) : nlohmann::json(nullptr);
    j["x_sigma"] = fit.x_sigma;
    j["mfe_percent"] = fit.mfe_percent;
    j["scale_degenerate"] = fit.scale_degenerate;
    j["converged"] = fit.converged;
    return j;
}

PathLossFit path_loss_fit_from_json(const nlohmann::json& j) {
    try {
        PathLossFit fit;
        const auto order = order_from_name(j.at("model").get<std::string>());
        if (!order) throw SchemaError("unknown model name");
        fit.model.order = *order;
        fit.frequency_hz = j.at("frequency_ghz").get<double>() * 1e9;
        fit.alpha = j.at("alpha").get<double>();
        fit.n = j.at("n").get<double>();
        fit.model.m = j.at("m").get<double>();
        fit.model.a1 = j.at("a1").get<double>();
        if (*order != RcsOrder::Sigma1) fit.model.a2 = j.at("a2").get<double>();
        if (*order == RcsOrder::Sigma3) fit.model.a3 = j.at("a3").get<double>();
        fit.x_sigma = j.value("x_sigma", 0.0);
        fit.mfe_percent = j.value("mfe_percent", 0.0);
        return fit;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("path-loss fit record: ") + e.what());
    }
}

std::vector<DistributionFamily> parse_family_list(std::string_view text) {
    if (text == "all") return {kFittedFamilies.begin(), kFittedFamilies.end()};
    std::vector<DistributionFamily> out;
    std::string item;
    std::istringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        const auto f = family_from_name(item);
        if (!f) throw SchemaError("unknown family '" + item + "'");
        out.push_back(*f);
    }
    if (out.empty()) throw SchemaError("empty family list");
    return out;
}

ScenarioSpec scenario_spec_from_json(const nlohmann::json& j) {
    try {
        ScenarioSpec spec;
        const auto& g = j.at("geometry");
        spec.geometry = BistaticGeometry(g.at("half_baseline_a").get<double>(), g.at("target_offset_y").get<double>());
        const auto& l = j.at("link");
        spec.link.tx_power_w = l.value("tx_power_w", 1.0);
        spec.link.tx_gain = l.value("tx_gain", 1.0);
        spec.link.rx_gain = l.value("rx_gain", 1.0);
        spec.link.system_loss = l.value("system_loss", 1.0);
        if (l.contains("wavelength_m")) {
            spec.link.wavelength_m = l.at("wavelength_m").get<double>();
        } else {
            spec.link.wavelength_m = wavelength_from_frequency(l.at("frequency_hz").get<double>());
        }
        spec.link.validate();
        spec.rcs_process = dist_params_from_json(j.at("rcs_process"));
        const auto n = j.at("n_snapshots").get<std::int64_t>();
        if (n < 1) throw SchemaError("n_snapshots must be >= 1");
        spec.n_snapshots = static_cast<std::size_t>(n);
        spec.noise_power_w = j.value("noise_power_w", 0.0);
        if (spec.noise_power_w < 0.0) throw SchemaError("noise_power_w must be >= 0");
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.target_id = j.value("target_id", std::string("synthetic"));
        if (j.contains("families")) {
            const auto& f = j.at("families");
            if (f.is_string()) {
                spec.families = parse_family_list(f.get<std::string>());
            } else {
                spec.families.clear();
                for (const auto& item : f) {
                    const auto fam = family_from_name(item.get<std::string>());
                    if (!fam) throw SchemaError("unknown family in scenario spec");
                    spec.families.push_back(*fam);
                }
            }
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("scenario spec: ") + e.what());
    } catch (const DomainError& e) {
        throw SchemaError(std::string("scenario spec: ") + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file " + path.string());
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rcskit
