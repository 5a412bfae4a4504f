#include "rcskit/montecarlo.hpp"

#include <cmath>
#include <random>

#include "rcskit/errors.hpp"
#include "rcskit/parallel.hpp"
#include "rcskit/waveform.hpp"

namespace rcskit {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t snapshot_seed(std::uint64_t scenario_seed, std::uint64_t index) {
    return splitmix64(scenario_seed ^ splitmix64(index));
}

ScenarioRun run_scenario(const ScenarioSpec& spec) {
    if (spec.n_snapshots == 0) throw DomainError("scenario needs at least one snapshot");
    if (!std::isfinite(spec.noise_power_w) || spec.noise_power_w < 0.0) {
        throw DomainError("noise power must be >= 0");
    }
    spec.link.validate();

    const double d = bistatic_distance(spec.geometry);
    const double lambda = spec.link.wavelength_m;
    const CalibrationFactor cal = calibrate(free_space_rx_power(spec.link, d), d, lambda);

    ScenarioRun run;
    run.frequency_hz = kSpeedOfLight / lambda;
    run.theta_b_deg = bistatic_angle_deg(spec.geometry);
    run.sampled_sigma.resize(spec.n_snapshots);
    run.recovered_sigma.resize(spec.n_snapshots);
    std::vector<char> clamped(spec.n_snapshots, 0);

    parallel_for(spec.n_snapshots, [&](std::size_t i) {
        Rng rng(snapshot_seed(spec.seed, i));
        const double sigma = draw(spec.rcs_process, rng);
        const double p_tar = target_power_forward(spec.link, d, sigma);
        double noise = 0.0;
        if (spec.noise_power_w > 0.0) {
            noise = std::exponential_distribution<double>(1.0 / spec.noise_power_w)(rng);
        }
        const PowerBudget budget = target_power(p_tar + noise, 0.0, spec.noise_power_w);
        run.sampled_sigma[i] = sigma;
        run.recovered_sigma[i] = invert_rcs(cal, budget.p_tar, lambda, d);
        clamped[i] = budget.clamped ? 1 : 0;
    });

    std::vector<double> positive;
    positive.reserve(spec.n_snapshots);
    for (std::size_t i = 0; i < spec.n_snapshots; ++i) {
        run.clamped_snapshots += static_cast<std::size_t>(clamped[i]);
        if (run.recovered_sigma[i] > 0.0) positive.push_back(run.recovered_sigma[i]);
    }
    if (positive.size() >= 2) {
        run.gof = rank_fits(positive, spec.families);
    }
    return run;
}

std::vector<PlObservation> synth_pl_dataset(const PlGenerator& row, double geom_a, std::span<const double> y_grid,
                                            double frequency_hz, double shadow_std_db, std::uint64_t seed) {
    if (y_grid.empty()) throw InsufficientData("empty distance grid");
    if (!std::isfinite(shadow_std_db) || shadow_std_db < 0.0) throw DomainError("shadowing std must be >= 0");
    Rng rng(seed);
    std::normal_distribution<double> shadow(0.0, 1.0);
    std::vector<PlObservation> out;
    out.reserve(y_grid.size());
    for (double y : y_grid) {
        double pl = predict_pl_at(row.alpha, row.n, row.model, geom_a, y, frequency_hz);
        if (shadow_std_db > 0.0) pl += shadow_std_db * shadow(rng);
        out.push_back({y, frequency_hz, pl});
    }
    return out;
}

}  // namespace rcskit
