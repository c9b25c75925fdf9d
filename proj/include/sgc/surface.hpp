#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgc/toy_diffusion.hpp"

namespace sgc {

/// Grid cell (mask step, text step).
struct GridPoint {
    int mask_step = 0;
    int text_step = 0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct QualitySample {
    double psnr = 0.0;
    double q = 0.0;
};

/// PSNR over the (mask delay, text delay) step grid, with quality normalized to
/// q = min(1, psnr / psnr_ref). Immutable once built.
class QualitySurface {
public:
    /// `psnr` is row-major (steps+1)^2, rows indexed by mask step. When
    /// `psnr_ref` is absent it is the largest entry other than (0, 0).
    QualitySurface(double omega, int steps, std::vector<double> psnr, double psnr_cap,
                   std::optional<double> psnr_ref = std::nullopt);

    /// Toy receiver grid.
    static QualitySurface from_toy(const ToyDiffusionConfig& cfg, const ConditioningSet& cond);
    static QualitySurface from_toy(const ToyDiffusionConfig& cfg);

    /// Synthetic surface q = clamp(1 - w_s u_s^p - w_l u_l^p, 0, 1), u_i = min(t_i / (T omega), 1).
    /// Stored as psnr = 60 q dB with psnr_ref = 60; the origin carries the cap.
    static QualitySurface from_parametric(double weight_mask, double weight_text, double exponent, int steps,
                                          double omega, double psnr_cap = 100.0);

    /// Parses the grid JSON document ({omega, T, psnr_cap, grid[, psnr_ref]}).
    static QualitySurface from_json(const std::string& text);
    static QualitySurface load(const std::string& path);

    std::string to_json() const;
    void save(const std::string& path) const;

    double omega() const noexcept { return omega_; }
    int steps() const noexcept { return steps_; }
    int size() const noexcept { return steps_ + 1; }
    double psnr_cap() const noexcept { return psnr_cap_; }
    double psnr_ref() const noexcept { return psnr_ref_; }
    const std::vector<double>& psnr_grid() const noexcept { return psnr_; }

    double psnr_at(GridPoint p) const;
    double q_at(GridPoint p) const;

    /// Delay in seconds of a step index.
    double delay_of(int step) const { return step * omega_; }

    /// Quality at arrival delays; delays quantize to step boundaries (ceil), and
    /// anything at or past steps * omega reads the never-arrived row/column.
    QualitySample evaluate(double t_mask, double t_text) const;

    /// All cells with q >= epsilon, in row-major order.
    std::vector<GridPoint> superlevel_set(double epsilon) const;

    /// Largest q over all cells (1 at the origin).
    double max_q() const;

private:
    std::size_t index(GridPoint p) const;

    double omega_;
    int steps_;
    std::vector<double> psnr_;
    double psnr_cap_;
    double psnr_ref_;
};

}  // namespace sgc
