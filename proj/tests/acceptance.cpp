// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "sgc/allocator.hpp"
#include "sgc/channel.hpp"
#include "sgc/deadline.hpp"
#include "sgc/error.hpp"
#include "sgc/sim.hpp"
#include "sgc/surface.hpp"
#include "sgc/toy_diffusion.hpp"

using namespace sgc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> body;
};

// Records the first failure message; later ones only flip the flag.
struct Checker {
    Outcome out;
    void expect(bool ok, const std::string& what) {
        if (!ok && out.pass) out.detail = what;
        out.pass = out.pass && ok;
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// ---------------------------------------------------------------------------

Outcome link_delay_exactness() {
    Checker c;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::int64_t> size(1, 1 << 24);
    std::uniform_real_distribution<double> log_b(2.0, 8.0), log_g(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const LinkSpec link{size(rng), std::pow(10.0, log_g(rng))};
        const double b = std::pow(10.0, log_b(rng));
        const double t = transmission_time(link, b);
        const double b_back = required_bandwidth(link, t);
        const double t_back = transmission_time(link, b_back);
        worst = std::max({worst, std::abs(b_back - b) / b, std::abs(t_back - t) / t});

        const LinkSpec unit{link.data_size_bits, 1.0};
        c.expect(transmission_time(unit, b) == static_cast<double>(unit.data_size_bits) / b, "gamma=1 not exactly D/B");
    }
    c.expect(worst < 1e-12, "round-trip relative error " + fmt(worst));
    if (c.out.pass) c.out.detail = "max round-trip rel err " + fmt(worst);
    return c.out;
}

Outcome toy_oracle() {
    Checker c;
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> step(0, 20);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ToyDiffusionConfig cfg;
        cfg.seed = rng();
        const auto cond = ConditioningSet::from_seed(cfg.latent_dim, cfg.seed);
        const int ks = step(rng), kl = step(rng);
        const Latent z = run(ks, kl, cfg, cond);
        const Latent ref = oracle::toy_closed_form(ks, kl, cfg, cond);
        for (std::size_t j = 0; j < z.size(); ++j) worst = std::max(worst, std::abs(z[j] - ref[j]));
    }
    c.expect(worst <= 1e-10, "max elementwise deviation " + fmt(worst));
    if (c.out.pass) c.out.detail = "max elementwise deviation " + fmt(worst);
    return c.out;
}

Outcome surface_monotonicity() {
    Checker c;
    std::mt19937_64 rng(303);
    for (int i = 0; i < 20; ++i) {
        ToyDiffusionConfig cfg;
        cfg.seed = rng();
        const auto s = QualitySurface::from_toy(cfg);
        for (int a = 0; a <= 20; ++a) {
            for (int b = 0; b <= 20; ++b) {
                const double v = s.psnr_at({a, b});
                if (a < 20) c.expect(s.psnr_at({a + 1, b}) <= v, "column increase at seed " + std::to_string(cfg.seed));
                if (b < 20) c.expect(s.psnr_at({a, b + 1}) <= v, "row increase at seed " + std::to_string(cfg.seed));
            }
        }
    }
    if (c.out.pass) c.out.detail = "20 seeds, 21x21 grids";
    return c.out;
}

Outcome nesting() {
    Checker c;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ToyDiffusionConfig cfg;
    cfg.seed = 4;
    const std::vector<QualitySurface> surfaces{QualitySurface::from_toy(cfg),
                                               QualitySurface::from_parametric(0.6, 0.5, 1.0, 20, 0.05),
                                               QualitySurface::from_parametric(0.8, 0.3, 2.5, 20, 0.05)};
    int pairs = 0;
    for (const auto& s : surfaces) {
        for (int i = 0; i < 100; ++i) {
            double hi = u(rng), lo = u(rng);
            if (hi == lo) continue;
            if (hi < lo) std::swap(hi, lo);
            const auto inner = s.superlevel_set(hi);
            const auto outer = s.superlevel_set(lo);
            const std::set<GridPoint> outer_set(outer.begin(), outer.end());
            for (const auto& p : inner) c.expect(outer_set.count(p) == 1, "nesting violated");
            ++pairs;
        }
    }
    if (c.out.pass) c.out.detail = std::to_string(pairs) + " pairs on toy + parametric";
    return c.out;
}

Outcome deadline_correctness() {
    Checker c;
    std::mt19937_64 rng(505);
    int points = 0;
    for (int i = 0; i < 10; ++i) {
        ToyDiffusionConfig cfg;
        cfg.seed = rng();
        const auto s = QualitySurface::from_toy(cfg);
        const auto curve = deadline_curve(s, 0.65, 20);
        for (const auto& p : curve.points) {
            const auto bf = oracle::brute_force_deadline(s, p.epsilon);
            c.expect(bf.has_value() == p.achievable, "achievability mismatch");
            if (bf && p.achievable) c.expect(*bf == p.cell, "argmax mismatch at eps " + fmt(p.epsilon));
            ++points;
        }
    }
    if (c.out.pass) c.out.detail = std::to_string(points) + " points match brute force";
    return c.out;
}

Outcome p2_p3() {
    Checker c;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> kdist(2, 30);
    std::vector<QualitySurface> surfaces;
    for (int i = 0; i < 10; ++i) {
        ToyDiffusionConfig cfg;
        cfg.seed = rng();
        surfaces.push_back(QualitySurface::from_toy(cfg));
    }
    surfaces.push_back(QualitySurface::from_parametric(0.6, 0.5, 2.0, 20, 0.05));
    int with_eps = 0;
    for (int sc = 0; sc < 1000; ++sc) {
        const auto& s = surfaces[static_cast<std::size_t>(sc) % surfaces.size()];
        const double eps_th = 0.9 * u(rng);
        const int K = kdist(rng);
        const auto curve = deadline_curve(s, eps_th, K);
        const LinkPair links{{static_cast<std::int64_t>(1000 + 60000 * u(rng)), std::pow(10.0, 2 * u(rng) - 1)},
                             {static_cast<std::int64_t>(1000 + 60000 * u(rng)), std::pow(10.0, 2 * u(rng) - 1)}};
        const double budget = std::pow(10.0, 4 + 3 * u(rng));

        // Independent feasibility predicate straight from the link formula.
        std::optional<double> expected;
        for (const auto& p : curve.points) {
            if (!p.achievable || p.t_mask <= 0.0 || p.t_text <= 0.0) continue;
            const double need = links.mask.data_size_bits / (p.t_mask * std::log2(1 + links.mask.snr_linear)) +
                                links.text.data_size_bits / (p.t_text * std::log2(1 + links.text.snr_linear));
            if (need <= budget) expected = p.epsilon;
        }
        const auto p2 = solve_p2(curve, links, budget);
        c.expect(p2.has_value() == expected.has_value(), "feasibility disagreement in scenario " + std::to_string(sc));
        if (!p2 || !expected) continue;
        c.expect(p2->eps_star == *expected, "eps* mismatch in scenario " + std::to_string(sc));
        ++with_eps;

        const auto a = allocate_proposed(s, curve, links, budget);
        c.expect(std::abs(a.B_s + a.B_l - budget) <= 1e-9 * budget, "budget not met exactly");
        c.expect(a.B_s >= p2->base.mask && a.B_l >= p2->base.text, "allocation below eps* minimum");
        c.expect(a.eps_star && *a.eps_star == p2->eps_star, "allocation eps* differs from P2");
    }
    if (c.out.pass) c.out.detail = "1000 scenarios, " + std::to_string(with_eps) + " with feasible eps*";
    return c.out;
}

Outcome leftover_split_hand_case() {
    Checker c;
    const LinkPair links{{4, 1.0}, {2, 1.0}};
    DeadlineCurve curve;
    curve.points = {{0.7, {2, 2}, 2.0, 2.0, true}, {0.85, {1, 2}, 1.0, 2.0, true}, {1.0, {0, 0}, 0.0, 0.0, true}};
    curve.K = 3;
    curve.eps_th = 0.7;
    const auto need = min_bandwidths(curve.points[0], links);
    c.expect(need && need->mask == 2.0 && need->text == 1.0, "base allocation is not (2, 1)");
    const auto a = solve_p3(curve, 0.7, links, 4.0);
    c.expect(a.B_s == 3.0 && a.B_l == 1.0, "B* = (" + fmt(a.B_s) + ", " + fmt(a.B_l) + ")");
    if (c.out.pass) c.out.detail = "B* = (3, 1)";
    return c.out;
}

Outcome benchmark2_closed_form() {
    Checker c;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const LinkPair links{{static_cast<std::int64_t>(100 + 1e5 * u(rng)), std::pow(10.0, 4 * u(rng) - 2)},
                             {static_cast<std::int64_t>(100 + 1e5 * u(rng)), std::pow(10.0, 4 * u(rng) - 2)}};
        const double budget = std::pow(10.0, 4 + 2 * u(rng));
        const auto a = allocate_benchmark2(links, budget);
        const double bs = oracle::golden_section_min(
            [&](double x) {
                return transmission_time(links.mask, x) + transmission_time(links.text, budget - x);
            },
            budget * 1e-12, budget * (1 - 1e-12));
        worst = std::max(worst, std::abs(a.B_s - bs) / a.B_s);
    }
    c.expect(worst <= 1e-6, "closed form vs golden section rel diff " + fmt(worst));
    const auto split = allocate_benchmark2({{32768, 1.0}, {8192, 1.0}}, 3e5);
    c.expect(std::abs(split.B_s / split.B_l - 2.0) < 1e-12, "ratio " + fmt(split.B_s / split.B_l));
    if (c.out.pass) c.out.detail = "max rel diff " + fmt(worst) + ", 2:1 split ok";
    return c.out;
}

Outcome policy_ordering() {
    Checker c;
    SimConfig cfg;  // defaults: toy surface, 4 KB / 1 KB, Gamma(0.5, 2) x 2, 0.1..0.5 MHz, 200 trials
    const auto rows = summarize(run_sweep(cfg));
    std::ostringstream detail;
    double gap_sum = 0.0;
    int points = 0;
    for (double b : cfg.bandwidth_sweep) {
        auto mean = [&](const std::string& p) {
            for (const auto& r : rows) {
                if (r.B_total == b && r.policy == p) return r.mean_q;
            }
            return std::numeric_limits<double>::quiet_NaN();
        };
        const double b1 = mean("benchmark1"), b2 = mean("benchmark2");
        const double k4 = mean("proposed_k4"), k20 = mean("proposed_k20");
        const std::string at = " at B=" + fmt(b);
        c.expect(k20 >= k4, "K20 < K4" + at + " (" + fmt(k20) + " < " + fmt(k4) + ")");
        c.expect(k4 >= b2, "K4 < benchmark2" + at + " (" + fmt(k4) + " < " + fmt(b2) + ")");
        c.expect(b2 >= b1, "benchmark2 < benchmark1" + at + " (" + fmt(b2) + " < " + fmt(b1) + ")");
        gap_sum += k20 - b1;
        ++points;
        detail << "\n      B=" << fmt(b) << "  b1=" << fmt(b1) << "  b2=" << fmt(b2) << "  k4=" << fmt(k4)
               << "  k20=" << fmt(k20);
    }
    const double gap = gap_sum / points;
    c.expect(gap >= 0.02, "K20 - benchmark1 overall gap " + fmt(gap));
    c.out.detail += (c.out.detail.empty() ? "" : "; ") + std::string("K20-b1 gap ") + fmt(gap) + detail.str();
    return c.out;
}

Outcome budget_monotonicity() {
    Checker c;
    SimConfig defaults;
    std::vector<QualitySurface> surfaces;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ToyDiffusionConfig cfg;
        cfg.seed = seed;
        surfaces.push_back(QualitySurface::from_toy(cfg));
    }
    std::vector<DeadlineCurve> curves;
    for (const auto& s : surfaces) curves.push_back(deadline_curve(s, defaults.eps_th, 20));

    std::vector<double> grid;
    for (double b = 1e4; b <= 1e7; b *= 1.08) grid.push_back(b);

    int steps_checked = 0;
    for (int sc = 0; sc < 100; ++sc) {
        std::mt19937_64 rng(trial_seed(1010, sc));
        const double gs = defaults.power_over_noise * sample_gain(rng, defaults.fading);
        const double gl = defaults.power_over_noise * sample_gain(rng, defaults.fading);
        const LinkPair links{{defaults.data_size_mask, gs}, {defaults.data_size_text, gl}};
        const std::size_t which = static_cast<std::size_t>(sc) % surfaces.size();
        double prev = -1.0;
        for (double b : grid) {
            const auto a = allocate_proposed(surfaces[which], curves[which], links, b);
            c.expect(a.achieved_q >= prev, "q drops in scenario " + std::to_string(sc) + " at B=" + fmt(b) + " (" +
                                               fmt(prev) + " -> " + fmt(a.achieved_q) + ")");
            prev = a.achieved_q;
            ++steps_checked;
        }
    }
    if (c.out.pass) c.out.detail = "100 scenarios x " + std::to_string(grid.size()) + " budgets";
    return c.out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism() {
    Checker c;
#ifdef SGC_CLI_PATH
    const auto dir = std::filesystem::temp_directory_path() / ("sgc_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto config = dir / "config.json";
    {
        std::ofstream out(config);
        out << SimConfig{}.to_json();
    }
    for (int run = 0; run < 2; ++run) {
        const auto out = dir / ("records_" + std::to_string(run) + ".csv");
        const std::string cmd = std::string("\"") + SGC_CLI_PATH + "\" sweep --config \"" + config.string() +
                                "\" --out \"" + out.string() + "\"";
        c.expect(std::system(cmd.c_str()) == 0, "sweep exited non-zero");
    }
    const std::string a = slurp(dir / "records_0.csv"), b = slurp(dir / "records_1.csv");
    const std::string sa = slurp(dir / "records_0.csv.summary.csv"), sb = slurp(dir / "records_1.csv.summary.csv");
    c.expect(!a.empty() && a == b, "record CSVs differ");
    c.expect(!sa.empty() && sa == sb, "summary CSVs differ");
    std::filesystem::remove_all(dir);
    if (c.out.pass) c.out.detail = std::to_string(a.size()) + " bytes identical across runs";
#else
    c.expect(false, "built without the CLI");
#endif
    return c.out;
}

Outcome complexity() {
    Checker c;
    const auto s = QualitySurface::from_toy(ToyDiffusionConfig{});
    const auto curve = deadline_curve(s, 0.65, 20);
    const std::uint64_t bound = 21ULL * 21ULL * 20ULL;
    const double ratio = static_cast<double>(curve.cells_visited) / static_cast<double>(bound);
    c.expect(ratio <= 2.0, "c = " + fmt(ratio));
    c.out.detail = std::to_string(curve.cells_visited) + " visits, c = " + fmt(ratio);
    return c.out;
}

}  // namespace

int main() {
    double sweep_seconds = 0.0;
    std::vector<Criterion> criteria{
        {1, "link delay round trip exactness", 1.0, link_delay_exactness},
        {2, "toy diffusion matches closed form", 1.0, toy_oracle},
        {3, "toy PSNR grid monotone", 5.0, surface_monotonicity},
        {4, "superlevel set nesting", 1.0, nesting},
        {5, "deadline points match brute force", 5.0, deadline_correctness},
        {6, "threshold selection optimality and budget exactness", 5.0, p2_p3},
        {7, "leftover split hand case", 0.1, leftover_split_hand_case},
        {8, "benchmark 2 closed form", 2.0, benchmark2_closed_form},
        {9, "policy ordering over the bandwidth sweep", 60.0, policy_ordering},
        {10, "budget monotonicity of the proposed policy", 10.0, budget_monotonicity},
        {11, "sweep CSV determinism", 0.0, cli_determinism},
        {12, "deadline curve cell visits", 0.1, complexity},
    };

    int failed = 0;
    for (auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.id == 9) sweep_seconds = secs;
        // Criterion 11 may take up to twice criterion 9 (two full sweeps).
        const double limit = cr.id == 11 ? 2.0 * std::max(sweep_seconds, 0.5) : cr.time_limit_s;
        if (secs > limit) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("runtime ") + fmt(secs) + " s > " + fmt(limit) + " s";
        }
        if (!o.pass) ++failed;
        std::printf("[%s] criterion %2d: %s (%.3f s) - %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs,
                    o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
