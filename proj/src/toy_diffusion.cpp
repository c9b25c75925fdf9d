#include "sgc/toy_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

namespace {

constexpr double kStepSlack = 1e-9;

// Gaussian direction supported on [begin, end) of a length-`dim` vector.
Latent random_unit(std::mt19937_64& rng, int dim, int begin, int end) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Latent v(static_cast<std::size_t>(dim), 0.0);
    double norm_sq = 0.0;
    while (norm_sq == 0.0) {
        norm_sq = 0.0;
        for (int i = begin; i < end; ++i) {
            v[i] = normal(rng);
            norm_sq += v[i] * v[i];
        }
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int i = begin; i < end; ++i) v[i] *= inv;
    return v;
}

double norm_of(const Latent& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void check_steps(int mask_step, int text_step, int steps) {
    if (mask_step < 0 || mask_step > steps || text_step < 0 || text_step > steps) {
        throw DomainError("arrival steps must lie in [0, " + std::to_string(steps) + "]");
    }
}

StepCase case_at(int j, int mask_step, int text_step) {
    const bool mask = j >= mask_step;
    const bool text = j >= text_step;
    if (mask && text) return StepCase::Both;
    if (mask) return StepCase::MaskOnly;
    if (text) return StepCase::TextOnly;
    return StepCase::Neither;
}

Latent iterate(int mask_step, int text_step, const ToyDiffusionConfig& cfg, const ConditioningSet& cond,
               std::vector<StepCase>* trace) {
    cfg.validate();
    cond.validate(cfg.latent_dim);
    check_steps(mask_step, text_step, cfg.steps);

    Latent z = initial_latent(cfg);
    const double keep = 1.0 - cfg.pull_rate;
    const auto d = z.size();
    for (int j = 0; j < cfg.steps; ++j) {
        const StepCase c = case_at(j, mask_step, text_step);
        if (trace) trace->push_back(c);
        const bool mask_ok = c == StepCase::Both || c == StepCase::MaskOnly;
        const bool text_ok = c == StepCase::Both || c == StepCase::TextOnly;
        const Latent& cs = mask_ok ? cond.mask_true : cond.mask_placeholder;
        const Latent& cl = text_ok ? cond.text_true : cond.text_placeholder;
        for (std::size_t i = 0; i < d; ++i) {
            const double target = cfg.weight_mask * cs[i] + cfg.weight_text * cl[i];
            z[i] = keep * z[i] + cfg.pull_rate * target;
        }
    }
    return z;
}

}  // namespace

void ToyDiffusionConfig::validate() const {
    if (latent_dim < 2 || latent_dim % 2 != 0) throw DomainError("latent_dim must be even and >= 2");
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (!(step_duration > 0.0) || !std::isfinite(step_duration)) throw DomainError("step_duration must be positive");
    if (!(pull_rate > 0.0) || pull_rate > 1.0) throw DomainError("pull_rate must lie in (0, 1]");
    if (!(weight_mask >= 0.0) || !(weight_text >= 0.0)) throw DomainError("weights must be non-negative");
    if (!(psnr_cap > 0.0) || !std::isfinite(psnr_cap)) throw DomainError("psnr_cap must be positive and finite");
    if (!(max_signal > 0.0) || !std::isfinite(max_signal)) throw DomainError("max_signal must be positive");
}

ConditioningSet ConditioningSet::from_seed(int latent_dim, std::uint64_t seed) {
    if (latent_dim < 2 || latent_dim % 2 != 0) throw DomainError("latent_dim must be even and >= 2");
    // Stream is decorrelated from initial_latent, which uses the raw seed.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const int half = latent_dim / 2;
    ConditioningSet cs;
    cs.mask_true = random_unit(rng, latent_dim, 0, half);
    cs.mask_placeholder = random_unit(rng, latent_dim, 0, half);
    cs.text_true = random_unit(rng, latent_dim, half, latent_dim);
    cs.text_placeholder = random_unit(rng, latent_dim, half, latent_dim);
    return cs;
}

void ConditioningSet::validate(int latent_dim) const {
    const auto d = static_cast<std::size_t>(latent_dim);
    const auto half = d / 2;
    for (const Latent* v : {&mask_true, &mask_placeholder, &text_true, &text_placeholder}) {
        if (v->size() != d) throw DomainError("conditioning vector length must equal latent_dim");
        if (std::abs(norm_of(*v) - 1.0) > 1e-9) throw DomainError("conditioning vectors must be unit norm");
    }
    for (std::size_t i = 0; i < d; ++i) {
        const bool mask_half = i < half;
        if (!mask_half && (mask_true[i] != 0.0 || mask_placeholder[i] != 0.0)) {
            throw DomainError("mask conditioning must be supported on the first half");
        }
        if (mask_half && (text_true[i] != 0.0 || text_placeholder[i] != 0.0)) {
            throw DomainError("text conditioning must be supported on the second half");
        }
    }
    if (mask_true == mask_placeholder || text_true == text_placeholder) {
        throw DomainError("placeholder must differ from the true conditioning");
    }
}

int arrival_step(double t, double omega, int steps) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("arrival time must be non-negative");
    if (!(omega > 0.0)) throw DomainError("step duration must be positive");
    if (steps < 0) throw DomainError("steps must be non-negative");
    if (!std::isfinite(t)) return steps;
    const double ratio = t / omega;
    if (ratio >= static_cast<double>(steps)) return steps;
    const double k = std::ceil(ratio - kStepSlack * std::max(1.0, ratio));
    // Any positive delay misses step 0.
    const int lo = t > 0.0 ? std::min(1, steps) : 0;
    return std::clamp(static_cast<int>(k), lo, steps);
}

Latent initial_latent(const ToyDiffusionConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Latent z(static_cast<std::size_t>(cfg.latent_dim));
    for (double& x : z) x = normal(rng);
    return z;
}

Latent run(int mask_step, int text_step, const ToyDiffusionConfig& cfg, const ConditioningSet& cond) {
    return iterate(mask_step, text_step, cfg, cond, nullptr);
}

Latent run_traced(int mask_step, int text_step, const ToyDiffusionConfig& cfg, const ConditioningSet& cond,
                  std::vector<StepCase>& trace) {
    trace.clear();
    return iterate(mask_step, text_step, cfg, cond, &trace);
}

Latent reference(const ToyDiffusionConfig& cfg, const ConditioningSet& cond) { return run(0, 0, cfg, cond); }

double psnr(std::span<const double> z_ref, std::span<const double> z, double max_signal, double cap) {
    if (z_ref.size() != z.size()) throw DomainError("latent length mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double diff = z_ref[i] - z[i];
        sq += diff * diff;
    }
    const double dist = std::sqrt(sq);
    if (dist == 0.0) return cap;
    const double value = 10.0 * std::log10(max_signal * max_signal / dist);
    return std::min(value, cap);
}

std::vector<double> generate_grid(const ToyDiffusionConfig& cfg, const ConditioningSet& cond) {
    const Latent z_ref = reference(cfg, cond);
    const int n = cfg.steps + 1;
    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Latent z = run(a, b, cfg, cond);
            grid[static_cast<std::size_t>(a) * n + b] = psnr(z_ref, z, cfg.max_signal, cfg.psnr_cap);
        }
    }
    return grid;
}

}  // namespace sgc
