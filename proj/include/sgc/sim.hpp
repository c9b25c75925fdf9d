#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/allocator.hpp"
#include "sgc/channel.hpp"
#include "sgc/surface.hpp"
#include "sgc/toy_diffusion.hpp"

namespace sgc {

struct ParametricSurfaceConfig {
    double weight_mask = 0.6;
    double weight_text = 0.5;
    double exponent = 2.0;
};

enum class SurfaceKind { Toy, Parametric, File };

/// Monte Carlo experiment description. Loaded from JSON; every field is optional
/// and falls back to the defaults below.
struct SimConfig {
    std::vector<double> bandwidth_sweep{1e5, 2e5, 3e5, 4e5, 5e5};  // Hz
    int trials = 200;
    std::uint64_t base_seed = 1;
    FadingModel fading{};
    double power_over_noise = 2.0;  // snr_i = power_over_noise * |h_i|^2
    std::int64_t data_size_mask = 4 * kBitsPerKilobyte;
    std::int64_t data_size_text = 1 * kBitsPerKilobyte;
    std::vector<int> k_values{4, 20};
    double eps_th = 0.65;
    SurfaceKind surface_kind = SurfaceKind::Toy;
    std::string surface_path;  // for SurfaceKind::File
    ToyDiffusionConfig toy{};
    ParametricSurfaceConfig parametric{};

    void validate() const;

    /// Throws ParseError / ValidationError.
    static SimConfig from_json(const std::string& text);
    static SimConfig load(const std::string& path);
    std::string to_json() const;
};

/// Builds the quality surface named by the config. File problems raise IoError
/// or ParseError/ValidationError.
QualitySurface build_surface(const SimConfig& config);

struct TrialRecord {
    int trial = 0;
    double B_total = 0.0;
    std::string policy;
    double gamma_s = 0.0;
    double gamma_l = 0.0;
    double B_s = 0.0;
    double B_l = 0.0;
    double t_s = 0.0;
    double t_l = 0.0;
    std::optional<double> eps_star;
    double psnr = 0.0;
    double q = 0.0;
};

struct SummaryRow {
    double B_total = 0.0;
    std::string policy;
    double mean_psnr = 0.0;
    double std_psnr = 0.0;
    double mean_q = 0.0;
    double std_q = 0.0;
    int count = 0;
};

/// splitmix64 finalizer applied to base_seed + golden-ratio * (trial + 1).
/// Each trial's draws depend on nothing but (base_seed, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Policy names in run order: benchmark1, benchmark2, then proposed for each K.
std::vector<std::string> policy_names(const SimConfig& config);

/// One record per (trial, B_total, policy), ordered by trial, then sweep
/// position, then policy run order.
std::vector<TrialRecord> run_sweep(const SimConfig& config);
std::vector<TrialRecord> run_sweep(const SimConfig& config, const QualitySurface& surface);

/// Mean and population standard deviation per (B_total, policy), ordered by
/// ascending B_total then policy name. Throws DomainError on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

std::string records_csv(const std::vector<TrialRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes `content` to `path`, raising IoError on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace sgc
