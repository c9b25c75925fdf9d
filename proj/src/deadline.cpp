#include "sgc/deadline.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "sgc/error.hpp"
#include "sgc/format.hpp"

namespace sgc {

namespace {

// Exact squared norm in step units; the step grid is uniform so this orders
// delay-pair norms identically.
long long norm_sq(GridPoint p) {
    return static_cast<long long>(p.mask_step) * p.mask_step + static_cast<long long>(p.text_step) * p.text_step;
}

std::optional<GridPoint> scan(const QualitySurface& surface, double epsilon, std::uint64_t& visits) {
    std::optional<GridPoint> best;
    const int n = surface.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            ++visits;
            const GridPoint p{a, b};
            if (surface.q_at(p) < epsilon) continue;
            if (!best || deadline_preferred(p, *best)) best = p;
        }
    }
    return best;
}

DeadlinePoint make_point(const QualitySurface& surface, double epsilon, GridPoint cell) {
    return {epsilon, cell, surface.delay_of(cell.mask_step), surface.delay_of(cell.text_step), true};
}

}  // namespace

bool deadline_preferred(GridPoint a, GridPoint b) {
    const long long na = norm_sq(a);
    const long long nb = norm_sq(b);
    if (na != nb) return na > nb;
    const int ma = std::min(a.mask_step, a.text_step);
    const int mb = std::min(b.mask_step, b.text_step);
    if (ma != mb) return ma > mb;
    return a.mask_step < b.mask_step;
}

DeadlinePoint deadline_point(const QualitySurface& surface, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
    std::uint64_t visits = 0;
    const auto best = scan(surface, epsilon, visits);
    if (!best) throw UnachievableThresholdError(epsilon);
    return make_point(surface, epsilon, *best);
}

std::vector<double> threshold_grid(double eps_th, int K) {
    if (!(eps_th >= 0.0 && eps_th < 1.0)) throw DomainError("eps_th must lie in [0, 1)");
    if (K < 2) throw DomainError("K must be >= 2");
    std::vector<double> eps(static_cast<std::size_t>(K));
    const double step = (1.0 - eps_th) / (K - 1);
    for (int k = 0; k < K; ++k) eps[k] = eps_th + k * step;
    eps.back() = 1.0;
    return eps;
}

DeadlineCurve deadline_curve(const QualitySurface& surface, double eps_th, int K) {
    DeadlineCurve curve;
    curve.eps_th = eps_th;
    curve.K = K;
    for (double eps : threshold_grid(eps_th, K)) {
        const auto best = scan(surface, eps, curve.cells_visited);
        if (best) {
            curve.points.push_back(make_point(surface, eps, *best));
        } else {
            curve.points.push_back({eps, {}, 0.0, 0.0, false});
        }
    }
    return curve;
}

std::string to_csv(const DeadlineCurve& curve) {
    std::ostringstream out;
    out << "eps,t_s,t_l,achievable\n";
    for (const auto& p : curve.points) {
        out << format_double(p.epsilon) << ',';
        if (p.achievable) {
            out << format_double(p.t_mask) << ',' << format_double(p.t_text) << ",1\n";
        } else {
            out << ",,0\n";
        }
    }
    return out.str();
}

}  // namespace sgc
