#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgc/surface.hpp"

namespace sgc {

/// Latest delay pair that still meets a quality threshold.
struct DeadlinePoint {
    double epsilon = 0.0;
    GridPoint cell;
    double t_mask = 0.0;  // seconds, a multiple of omega
    double t_text = 0.0;
    bool achievable = true;
};

/// Deadline points over K thresholds spaced uniformly on [eps_th, 1], ascending.
struct DeadlineCurve {
    std::vector<DeadlinePoint> points;
    double eps_th = 0.0;
    int K = 0;
    /// Grid cells inspected while building the curve.
    std::uint64_t cells_visited = 0;
};

/// Strict total order used to pick among cells of a superlevel set: larger
/// distance from the origin, then larger min(mask, text) step, then smaller
/// mask step. Returns true when `a` is preferred over `b`.
bool deadline_preferred(GridPoint a, GridPoint b);

/// Farthest cell from the origin with q >= epsilon.
/// Throws UnachievableThresholdError when no cell qualifies.
DeadlinePoint deadline_point(const QualitySurface& surface, double epsilon);

/// Thresholds eps_th + k (1 - eps_th) / (K - 1), k = 0..K-1. Unachievable
/// thresholds are kept as points with achievable = false.
DeadlineCurve deadline_curve(const QualitySurface& surface, double eps_th, int K);

std::vector<double> threshold_grid(double eps_th, int K);

/// CSV with header eps,t_s,t_l,achievable.
std::string to_csv(const DeadlineCurve& curve);

}  // namespace sgc
