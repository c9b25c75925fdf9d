#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sgc {

using Latent = std::vector<double>;

/// Parameters of the linear receiver surrogate.
///
/// Each reverse step pulls the latent toward the current conditioning:
///   z_{j+1} = (1 - pull_rate) z_j + pull_rate (weight_mask c_s(j) + weight_text c_l(j))
/// where c_i(j) is the true vector once modality i has arrived and its
/// placeholder before that.
struct ToyDiffusionConfig {
    int latent_dim = 16;
    int steps = 20;
    double step_duration = 0.05;  // seconds per reverse step
    double pull_rate = 0.3;
    double weight_mask = 1.0;
    double weight_text = 1.0;
    std::uint64_t seed = 0;
    double psnr_cap = 100.0;   // dB, stands in for the infinite PSNR at zero distance
    double max_signal = 6.0;   // latent values assumed in [-max_signal, max_signal]

    void validate() const;
};

/// True and placeholder conditioning vectors. Mask vectors live on the first
/// half of the coordinates and text vectors on the second half, so the two
/// modality difference vectors are orthogonal.
struct ConditioningSet {
    Latent mask_true;
    Latent mask_placeholder;
    Latent text_true;
    Latent text_placeholder;

    /// Draws the four unit vectors from `seed`.
    static ConditioningSet from_seed(int latent_dim, std::uint64_t seed);

    void validate(int latent_dim) const;
};

/// Which modalities condition a given step.
enum class StepCase : int {
    Neither = 1,   // both placeholders
    MaskOnly = 2,  // true mask, placeholder text
    TextOnly = 3,  // placeholder mask, true text
    Both = 4,
};

/// First step index at which data arriving at `t` conditions the process:
/// ceil(t / omega) clamped to [0, steps]. `steps` means it never arrives in time.
/// Step boundaries absorb a relative rounding slack of 1e-9 so that a delay
/// reconstructed from a bandwidth round trip lands on its intended step.
int arrival_step(double t, double omega, int steps);

/// Seed-derived initial latent.
Latent initial_latent(const ToyDiffusionConfig& cfg);

/// Final latent for arrival steps (mask_step, text_step).
Latent run(int mask_step, int text_step, const ToyDiffusionConfig& cfg, const ConditioningSet& cond);

/// As `run`, also recording the case label of every step into `trace`.
Latent run_traced(int mask_step, int text_step, const ToyDiffusionConfig& cfg, const ConditioningSet& cond,
                  std::vector<StepCase>& trace);

/// Ideal final latent, both modalities present from step 0.
Latent reference(const ToyDiffusionConfig& cfg, const ConditioningSet& cond);

/// 10 log10(max_signal^2 / ||z_ref - z||_2), un-squared L2 distance.
/// Returns `cap` for zero distance or when the value would exceed it.
double psnr(std::span<const double> z_ref, std::span<const double> z, double max_signal, double cap);

/// Row-major (steps+1)^2 PSNR table; entry (a, b) uses mask step a, text step b.
std::vector<double> generate_grid(const ToyDiffusionConfig& cfg, const ConditioningSet& cond);

}  // namespace sgc
