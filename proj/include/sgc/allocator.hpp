#pragma once

#include <optional>
#include <string>

#include "sgc/channel.hpp"
#include "sgc/deadline.hpp"
#include "sgc/surface.hpp"

namespace sgc {

/// The two links, mask first.
struct LinkPair {
    LinkSpec mask;
    LinkSpec text;
};

struct BandwidthPair {
    double mask = 0.0;  // Hz
    double text = 0.0;

    double total() const { return mask + text; }
};

/// A policy's bandwidth split and the quality it achieves.
struct Allocation {
    std::string policy;
    double B_s = 0.0;
    double B_l = 0.0;
    double t_s = 0.0;  // +inf when the link gets no bandwidth
    double t_l = 0.0;
    std::optional<double> eps_star;
    double achieved_psnr = 0.0;
    double achieved_q = 0.0;
};

/// Benchmark 1 reading of "maximize throughput".
enum class ThroughputRule {
    ProportionalToRate,  // B_i proportional to log2(1 + snr_i)
    BestChannelOnly,     // literal linear optimum: all bandwidth on the better link
};

/// Benchmark 2 reading of "minimize total transmission time".
enum class DelayRule {
    SumOfDelays,  // minimize t_s + t_l
    Makespan,     // minimize max(t_s, t_l)
};

/// Minimum bandwidths that meet a deadline point; nullopt when a delay
/// coordinate is zero (unbounded bandwidth) or the point is unachievable.
std::optional<BandwidthPair> min_bandwidths(const DeadlinePoint& point, const LinkPair& links);

struct P2Solution {
    std::size_t index = 0;  // into curve.points
    double eps_star = 0.0;
    BandwidthPair base;
};

/// Largest threshold on the curve whose minimum bandwidths fit in `budget`.
/// nullopt means even the lowest threshold is infeasible.
std::optional<P2Solution> solve_p2(const DeadlineCurve& curve, const LinkPair& links, double budget);

/// Distributes the leftover budget above the eps_star minimum. The split
/// follows the bandwidth increments needed to reach the next threshold's
/// deadline point; when that point needs unbounded bandwidth, or no increment
/// is positive, the leftover is split in proportion to the minimum bandwidths.
/// Negative increments are treated as zero so neither link drops below its
/// minimum. Throws DomainError when eps_star is absent or not on the curve.
Allocation solve_p3(const DeadlineCurve& curve, std::optional<double> eps_star, const LinkPair& links,
                    double budget);

/// Proposed policy: deadline curve, then P2, then P3. Falls back to
/// benchmark 2 (eps_star unset) when no threshold is feasible.
Allocation allocate_proposed(const QualitySurface& surface, const LinkPair& links, double budget, int K,
                             double eps_th);

/// Same, reusing a precomputed curve.
Allocation allocate_proposed(const QualitySurface& surface, const DeadlineCurve& curve, const LinkPair& links,
                             double budget);

Allocation allocate_benchmark1(const LinkPair& links, double budget,
                               ThroughputRule rule = ThroughputRule::ProportionalToRate);

Allocation allocate_benchmark2(const LinkPair& links, double budget, DelayRule rule = DelayRule::SumOfDelays);

/// Fills t_s, t_l, achieved_psnr and achieved_q. A zero bandwidth means the
/// modality never arrives.
Allocation evaluate_allocation(Allocation alloc, const LinkPair& links, const QualitySurface& surface);

/// "proposed_k<K>".
std::string proposed_policy_name(int K);

}  // namespace sgc
