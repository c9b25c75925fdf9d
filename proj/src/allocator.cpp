#include "sgc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgc/error.hpp"

namespace sgc {

namespace {

void check_budget(double budget) {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw DomainError("bandwidth budget must be positive and finite");
}

void validate(const LinkPair& links) {
    links.mask.validate();
    links.text.validate();
}

double delay_or_never(const LinkSpec& link, double bandwidth) {
    if (bandwidth <= 0.0) return std::numeric_limits<double>::infinity();
    return transmission_time(link, bandwidth);
}

// Splits `leftover` by non-negative weights; equal halves when both are zero.
BandwidthPair split(double leftover, double w_mask, double w_text) {
    const double sum = w_mask + w_text;
    if (!(sum > 0.0)) return {leftover / 2.0, leftover / 2.0};
    const double mask = leftover * (w_mask / sum);
    return {mask, leftover - mask};
}

}  // namespace

std::optional<BandwidthPair> min_bandwidths(const DeadlinePoint& point, const LinkPair& links) {
    if (!point.achievable) return std::nullopt;
    if (point.t_mask <= 0.0 || point.t_text <= 0.0) return std::nullopt;
    return BandwidthPair{required_bandwidth(links.mask, point.t_mask), required_bandwidth(links.text, point.t_text)};
}

std::optional<P2Solution> solve_p2(const DeadlineCurve& curve, const LinkPair& links, double budget) {
    if (curve.points.empty()) throw DomainError("deadline curve is empty");
    validate(links);
    check_budget(budget);
    for (std::size_t i = curve.points.size(); i-- > 0;) {
        const auto need = min_bandwidths(curve.points[i], links);
        if (need && need->total() <= budget) return P2Solution{i, curve.points[i].epsilon, *need};
    }
    return std::nullopt;
}

Allocation solve_p3(const DeadlineCurve& curve, std::optional<double> eps_star, const LinkPair& links,
                    double budget) {
    if (!eps_star) throw DomainError("solve_p3 requires a threshold from solve_p2");
    validate(links);
    check_budget(budget);

    const auto it = std::find_if(curve.points.begin(), curve.points.end(),
                                 [&](const DeadlinePoint& p) { return p.epsilon == *eps_star; });
    if (it == curve.points.end()) throw DomainError("eps_star is not a threshold of this curve");
    const auto base = min_bandwidths(*it, links);
    if (!base) throw DomainError("eps_star threshold is infeasible at any budget");
    const double leftover = budget - base->total();
    if (leftover < -1e-9 * budget) throw DomainError("budget is below the eps_star minimum");

    BandwidthPair extra{0.0, 0.0};
    if (leftover > 0.0) {
        const auto next_it = std::next(it);
        std::optional<BandwidthPair> next;
        if (next_it != curve.points.end()) next = min_bandwidths(*next_it, links);
        // Increment toward the next deadline point: (1/t' - 1/t) D / r = B' - B.
        const double grow_mask = next ? std::max(0.0, next->mask - base->mask) : 0.0;
        const double grow_text = next ? std::max(0.0, next->text - base->text) : 0.0;
        if (grow_mask + grow_text > 0.0) {
            extra = split(leftover, grow_mask, grow_text);
        } else {
            extra = split(leftover, base->mask, base->text);
        }
    }

    Allocation out;
    out.B_s = base->mask + extra.mask;
    out.B_l = base->text + extra.text;
    out.eps_star = *eps_star;
    return out;
}

Allocation allocate_proposed(const QualitySurface& surface, const DeadlineCurve& curve, const LinkPair& links,
                             double budget) {
    const auto p2 = solve_p2(curve, links, budget);
    if (!p2) {
        Allocation fallback = allocate_benchmark2(links, budget);
        fallback.policy = proposed_policy_name(curve.K);
        fallback.eps_star.reset();
        return evaluate_allocation(std::move(fallback), links, surface);
    }
    Allocation alloc = solve_p3(curve, p2->eps_star, links, budget);
    alloc.policy = proposed_policy_name(curve.K);
    return evaluate_allocation(std::move(alloc), links, surface);
}

Allocation allocate_proposed(const QualitySurface& surface, const LinkPair& links, double budget, int K,
                             double eps_th) {
    return allocate_proposed(surface, deadline_curve(surface, eps_th, K), links, budget);
}

Allocation allocate_benchmark1(const LinkPair& links, double budget, ThroughputRule rule) {
    validate(links);
    check_budget(budget);
    const double rs = links.mask.spectral_efficiency();
    const double rl = links.text.spectral_efficiency();
    Allocation out;
    out.policy = "benchmark1";
    if (rule == ThroughputRule::ProportionalToRate) {
        out.B_s = budget * (rs / (rs + rl));
        out.B_l = budget - out.B_s;
    } else if (rs > rl) {
        out.B_s = budget;
    } else if (rl > rs) {
        out.B_l = budget;
    } else {
        out.B_s = out.B_l = budget / 2.0;
    }
    return out;
}

Allocation allocate_benchmark2(const LinkPair& links, double budget, DelayRule rule) {
    validate(links);
    check_budget(budget);
    const double load_s = static_cast<double>(links.mask.data_size_bits) / links.mask.spectral_efficiency();
    const double load_l = static_cast<double>(links.text.data_size_bits) / links.text.spectral_efficiency();
    // Sum of delays: Lagrange stationarity gives B_i proportional to sqrt(D_i / r_i).
    // Makespan: equal delays give B_i proportional to D_i / r_i.
    const double ws = rule == DelayRule::SumOfDelays ? std::sqrt(load_s) : load_s;
    const double wl = rule == DelayRule::SumOfDelays ? std::sqrt(load_l) : load_l;
    Allocation out;
    out.policy = "benchmark2";
    out.B_s = budget * (ws / (ws + wl));
    out.B_l = budget - out.B_s;
    return out;
}

Allocation evaluate_allocation(Allocation alloc, const LinkPair& links, const QualitySurface& surface) {
    if (alloc.B_s < 0.0 || alloc.B_l < 0.0) throw DomainError("allocated bandwidth must be non-negative");
    alloc.t_s = delay_or_never(links.mask, alloc.B_s);
    alloc.t_l = delay_or_never(links.text, alloc.B_l);
    const QualitySample s = surface.evaluate(alloc.t_s, alloc.t_l);
    alloc.achieved_psnr = s.psnr;
    alloc.achieved_q = s.q;
    return alloc;
}

std::string proposed_policy_name(int K) { return "proposed_k" + std::to_string(K); }

}  // namespace sgc
