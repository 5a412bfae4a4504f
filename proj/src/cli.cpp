#include "rcskit/cli.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rcskit/errors.hpp"
#include "rcskit/io.hpp"
#include "rcskit/montecarlo.hpp"
#include "rcskit/nf_rcs.hpp"

namespace rcskit::cli {
namespace {

using nlohmann::json;

json group_json(const SampleKey& key, std::span<const double> values) {
    json g{{"target_id", key.target_id},
           {"frequency_ghz", key.frequency_ghz},
           {"theta_b_deg", key.theta_b_deg},
           {"n_samples", values.size()}};
    if (!values.empty()) {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        g["sample_min"] = *lo;
        g["sample_max"] = *hi;
    }
    return g;
}

void write_json(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

int cmd_fit_dist(const FitDistArgs& args, std::ostream& err) {
    SampleGroups groups;
    std::vector<DistributionFamily> families;
    std::string digest;
    try {
        families = parse_family_list(args.families);
        groups = ingest_rcs_csv(args.input);
        digest = sha256_file(args.input);
    } catch (const Error& e) {
        err << "fit-dist: " << e.what() << '\n';
        return kInputError;
    }
    if (groups.empty()) {
        err << "fit-dist: input has no samples\n";
        return kInputError;
    }

    json report{{"tool_version", kToolVersion}, {"inputs", {{"input_sha256", digest}}}};
    json out_groups = json::array();
    bool any_failed = false;
    for (const auto& [key, set] : groups) {
        json g = group_json(key, set.values);
        try {
            const FitRanking ranking = rank_fits(set, families);
            const json r = to_json(ranking);
            g["fits"] = r["fits"];
            g["excluded"] = r["excluded"];
            for (const auto& e : ranking.excluded) {
                err << "fit-dist: " << key.target_id << " @ " << key.frequency_ghz << " GHz, "
                    << key.theta_b_deg << " deg: " << family_name(e.family) << " excluded: " << e.message << '\n';
            }
            if (ranking.ranked.empty()) any_failed = true;
        } catch (const Error& e) {
            g["fits"] = json::array();
            g["error"] = e.what();
            err << "fit-dist: " << key.target_id << ": " << e.what() << '\n';
            any_failed = true;
        }
        out_groups.push_back(std::move(g));
    }
    report["groups"] = std::move(out_groups);
    try {
        write_json(args.out, report);
    } catch (const Error& e) {
        err << "fit-dist: " << e.what() << '\n';
        return kInputError;
    }
    return any_failed ? kNumericFailure : kOk;
}

int cmd_fit_pl(const FitPlArgs& args, std::ostream& err) {
    std::vector<PlObservation> obs;
    std::vector<RcsOrder> orders;
    std::string digest;
    try {
        if (args.model == "all") {
            orders = {RcsOrder::Sigma1, RcsOrder::Sigma2, RcsOrder::Sigma3};
        } else if (const auto o = order_from_name(args.model)) {
            orders = {*o};
        } else {
            throw SchemaError("unknown model '" + args.model + "' (expected sigma1|sigma2|sigma3|all)");
        }
        if (!(args.geom_a >= 0.0)) throw SchemaError("--geom-a must be >= 0");
        obs = ingest_pl_csv(args.input);
        digest = sha256_file(args.input);
    } catch (const Error& e) {
        err << "fit-pl: " << e.what() << '\n';
        return kInputError;
    }
    if (obs.empty()) {
        err << "fit-pl: input has no observations\n";
        return kInputError;
    }

    std::map<double, std::vector<PlObservation>> by_frequency;
    for (const auto& o : obs) by_frequency[o.frequency_hz].push_back(o);

    json fits = json::array();
    json errors = json::array();
    for (const auto& [freq, group] : by_frequency) {
        for (RcsOrder order : orders) {
            try {
                fits.push_back(to_json(fit_pl(group, args.geom_a, order)));
            } catch (const Error& e) {
                err << "fit-pl: " << freq / 1e9 << " GHz " << order_name(order) << ": " << e.what() << '\n';
                errors.push_back({{"frequency_ghz", freq / 1e9},
                                  {"model", std::string(order_name(order))},
                                  {"error", e.what()}});
            }
        }
    }
    const json report{{"tool_version", kToolVersion},
                      {"inputs", {{"input_sha256", digest}}},
                      {"geom_a", args.geom_a},
                      {"fits", fits},
                      {"errors", errors}};
    try {
        write_json(args.out, report);
    } catch (const Error& e) {
        err << "fit-pl: " << e.what() << '\n';
        return kInputError;
    }
    return errors.empty() ? kOk : kNumericFailure;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& err) {
    ScenarioSpec spec;
    std::string digest;
    std::optional<double> label_frequency_hz;
    try {
        const std::string text = read_text_file(args.spec);
        digest = sha256_hex(text);
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("scenario spec is not valid JSON: ") + e.what());
        }
        spec = scenario_spec_from_json(j);
        if (j.contains("link") && j["link"].contains("frequency_hz")) {
            label_frequency_hz = j["link"]["frequency_hz"].get<double>();
        }
    } catch (const Error& e) {
        err << "simulate: " << e.what() << '\n';
        return kInputError;
    }
    if (args.seed) spec.seed = *args.seed;

    ScenarioRun run;
    try {
        run = run_scenario(spec);
    } catch (const Error& e) {
        err << "simulate: " << e.what() << '\n';
        return kNumericFailure;
    }

    const SampleKey key{spec.target_id, label_frequency_hz.value_or(run.frequency_hz) / 1e9, run.theta_b_deg};
    SampleGroups groups;
    auto& set = groups[key];
    set.metadata = {key.target_id, key.frequency_ghz, key.theta_b_deg};
    for (double v : run.recovered_sigma) {
        if (v > 0.0) set.values.push_back(v);
    }

    json g = group_json(key, set.values);
    const json r = to_json(run.gof);
    g["fits"] = r["fits"];
    g["excluded"] = r["excluded"];
    const json report{{"tool_version", kToolVersion},
                      {"inputs", {{"spec_sha256", digest}}},
                      {"seed", spec.seed},
                      {"n_snapshots", spec.n_snapshots},
                      {"clamped_snapshots", run.clamped_snapshots},
                      {"groups", json::array({g})}};
    try {
        std::ostringstream csv;
        write_rcs_csv(csv, groups);
        write_text_file(args.out_samples, csv.str());
        write_json(args.out_report, report);
    } catch (const Error& e) {
        err << "simulate: " << e.what() << '\n';
        return kInputError;
    }
    if (run.gof.ranked.empty()) {
        err << "simulate: no family could be fitted to the recovered samples\n";
        return kNumericFailure;
    }
    return kOk;
}

int cmd_plotdata(const PlotDataArgs& args, std::ostream& err) {
    if (args.kind != "pdf" && args.kind != "cdf" && args.kind != "pl-curve") {
        err << "plotdata: --kind must be pdf, cdf or pl-curve\n";
        return kInputError;
    }
    if (args.grid < 1) {
        err << "plotdata: --grid must be >= 1\n";
        return kInputError;
    }
    std::ostringstream csv;
    try {
        json report;
        try {
            report = json::parse(read_text_file(args.report));
        } catch (const json::exception& e) {
            throw SchemaError(std::string("report is not valid JSON: ") + e.what());
        }
        if (args.kind == "pl-curve") {
            if (!report.contains("fits") || !report["fits"].is_array() || !report.contains("geom_a")) {
                throw SchemaError("report has no path-loss fits");
            }
            const double geom_a = report.at("geom_a").get<double>();
            csv << "frequency_ghz,model,y_m,pl_db\n";
            for (const auto& rec : report["fits"]) {
                const PathLossFit fit = path_loss_fit_from_json(rec);
                for (double y : linear_grid(2.0, 10.0, args.grid)) {
                    const double pl = predict_pl_at(fit.alpha, fit.n, fit.model, geom_a, y, fit.frequency_hz);
                    csv << format_double(fit.frequency_hz / 1e9) << ',' << order_name(fit.model.order) << ','
                        << format_double(y) << ',' << format_double(pl) << '\n';
                }
            }
        } else {
            if (!report.contains("groups") || !report["groups"].is_array()) {
                throw SchemaError("report has no distribution groups");
            }
            csv << "target_id,frequency_ghz,theta_b_deg,family,x," << args.kind << '\n';
            for (const auto& g : report["groups"]) {
                if (!g.contains("sample_min")) continue;
                const double lo = g.at("sample_min").get<double>();
                const double hi = g.at("sample_max").get<double>();
                const std::string prefix = g.at("target_id").get<std::string>() + ',' +
                                           format_double(g.at("frequency_ghz").get<double>()) + ',' +
                                           format_double(g.at("theta_b_deg").get<double>()) + ',';
                for (const auto& fit : g.at("fits")) {
                    json flat = fit.at("params");
                    flat["family"] = fit.at("family");
                    const DistParams params = dist_params_from_json(flat);
                    for (double x : linear_grid(lo, hi, args.grid)) {
                        const double v = args.kind == "pdf" ? pdf(params, x) : cdf(params, x);
                        csv << prefix << family_name(params.family()) << ',' << format_double(x) << ','
                            << format_double(v) << '\n';
                    }
                }
            }
        }
    } catch (const json::exception& e) {
        err << "plotdata: malformed report: " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << "plotdata: " << e.what() << '\n';
        return kInputError;
    }
    try {
        write_text_file(args.out, csv.str());
    } catch (const Error& e) {
        err << "plotdata: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bistatic RCS characterisation: distribution fitting, near-field path-loss fitting, simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    FitDistArgs fd;
    auto* fit_dist = app.add_subcommand("fit-dist", "Fit and rank RCS distributions per (target, frequency, angle)");
    fit_dist->add_option("--input", fd.input, "RCS sample CSV")->required();
    fit_dist->add_option("--families", fd.families, "all, or a comma-separated family list");
    fit_dist->add_option("--out", fd.out, "GoF report JSON")->required();

    FitPlArgs fp;
    auto* fit_pl_cmd = app.add_subcommand("fit-pl", "Fit near-field RCS models inside the double path-loss model");
    fit_pl_cmd->add_option("--input", fp.input, "PL observation CSV")->required();
    fit_pl_cmd->add_option("--geom-a", fp.geom_a, "half Tx-Rx baseline in metres")->required();
    fit_pl_cmd->add_option("--model", fp.model, "sigma1|sigma2|sigma3|all");
    fit_pl_cmd->add_option("--out", fp.out, "fit report JSON")->required();

    SimulateArgs sm;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Run a synthetic measurement scenario");
    simulate->add_option("--spec", sm.spec, "scenario JSON")->required();
    simulate->add_option("--out-samples", sm.out_samples, "recovered RCS sample CSV")->required();
    simulate->add_option("--out-report", sm.out_report, "GoF report JSON")->required();
    auto* seed_opt = simulate->add_option("--seed", seed, "overrides the spec seed");

    PlotDataArgs pd;
    auto* plotdata = app.add_subcommand("plotdata", "Emit plot-ready columns from a report");
    plotdata->add_option("--report", pd.report, "report JSON")->required();
    plotdata->add_option("--kind", pd.kind, "pdf|cdf|pl-curve")->required();
    plotdata->add_option("--grid", pd.grid, "number of grid points");
    plotdata->add_option("--out", pd.out, "output CSV")->required();

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    if (fit_dist->parsed()) return cmd_fit_dist(fd, err);
    if (fit_pl_cmd->parsed()) return cmd_fit_pl(fp, err);
    if (simulate->parsed()) {
        if (seed_opt->count() > 0) sm.seed = seed;
        return cmd_simulate(sm, err);
    }
    if (plotdata->parsed()) return cmd_plotdata(pd, err);
    return kInputError;
}

}  // namespace rcskit::cli
