// sgc: command-line front end for surfaces, deadline curves, allocations and
// Monte Carlo sweeps.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgc/allocator.hpp"
#include "sgc/deadline.hpp"
#include "sgc/error.hpp"
#include "sgc/sim.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::vector<double> bandwidth;
    std::vector<int> k;
    std::optional<double> eps_th;
    std::optional<int> trials;
    std::string surface_path;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "JSON simulation config");
    cmd->add_option("--out", o.out_path, "Output path (stdout when omitted)");
    cmd->add_option("--seed", o.seed, "Seed override");
    cmd->add_option("--bandwidth", o.bandwidth, "Total bandwidth in Hz (repeatable for sweeps)");
    cmd->add_option("--k", o.k, "Number of quality thresholds (repeatable for sweeps)");
    cmd->add_option("--eps-th", o.eps_th, "Lowest quality threshold");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--surface", o.surface_path, "Quality surface grid JSON");
}

sgc::SimConfig resolve_config(const CommonOptions& o) {
    sgc::SimConfig cfg = o.config_path.empty() ? sgc::SimConfig{} : sgc::SimConfig::load(o.config_path);
    if (!o.bandwidth.empty()) cfg.bandwidth_sweep = o.bandwidth;
    if (!o.k.empty()) cfg.k_values = o.k;
    if (o.eps_th) cfg.eps_th = *o.eps_th;
    if (o.trials) cfg.trials = *o.trials;
    if (!o.surface_path.empty()) {
        cfg.surface_kind = sgc::SurfaceKind::File;
        cfg.surface_path = o.surface_path;
    }
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
    } else {
        sgc::write_text(path, content);
    }
}

nlohmann::json allocation_json(const sgc::Allocation& a, double budget) {
    nlohmann::json j;
    j["policy"] = a.policy;
    j["B_total"] = budget;
    j["B_s"] = a.B_s;
    j["B_l"] = a.B_l;
    // JSON has no infinity; a starved link reports null.
    j["t_s"] = std::isfinite(a.t_s) ? nlohmann::json(a.t_s) : nlohmann::json(nullptr);
    j["t_l"] = std::isfinite(a.t_l) ? nlohmann::json(a.t_l) : nlohmann::json(nullptr);
    j["eps_star"] = a.eps_star ? nlohmann::json(*a.eps_star) : nlohmann::json(nullptr);
    j["psnr"] = a.achieved_psnr;
    j["q"] = a.achieved_q;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic-deadline-aware bandwidth allocation simulator"};
    app.require_subcommand(1);

    CommonOptions gen_opts;
    std::string kind = "toy";
    auto* gen = app.add_subcommand("gen-surface", "Emit a toy or parametric quality grid as JSON");
    add_common(gen, gen_opts);
    gen->add_option("--kind", kind, "toy | parametric")->check(CLI::IsMember({"toy", "parametric"}));

    CommonOptions dl_opts;
    auto* dl = app.add_subcommand("deadlines", "Emit the semantic deadline curve as CSV");
    add_common(dl, dl_opts);

    CommonOptions al_opts;
    double gamma_s_db = 2.3, gamma_l_db = 3.5;
    std::string policy = "all";
    auto* al = app.add_subcommand("allocate", "One-shot allocation printed as JSON");
    add_common(al, al_opts);
    al->add_option("--gamma-s-db", gamma_s_db, "Mask link SNR in dB");
    al->add_option("--gamma-l-db", gamma_l_db, "Text link SNR in dB");
    al->add_option("--policy", policy, "proposed | benchmark1 | benchmark2 | all")
        ->check(CLI::IsMember({"proposed", "benchmark1", "benchmark2", "all"}));

    CommonOptions sw_opts;
    std::string summary_path;
    auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep: per-trial records CSV plus summary CSV");
    add_common(sw, sw_opts);
    sw->add_option("--summary", summary_path, "Summary CSV path (default: <out>.summary.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*gen) {
            sgc::SimConfig cfg = resolve_config(gen_opts);
            if (gen_opts.seed) cfg.toy.seed = *gen_opts.seed;
            if (cfg.surface_kind != sgc::SurfaceKind::File) {
                cfg.surface_kind = kind == "toy" ? sgc::SurfaceKind::Toy : sgc::SurfaceKind::Parametric;
            }
            emit(gen_opts.out_path, sgc::build_surface(cfg).to_json() + "\n");
        } else if (*dl) {
            sgc::SimConfig cfg = resolve_config(dl_opts);
            if (dl_opts.seed) cfg.toy.seed = *dl_opts.seed;
            const auto surface = sgc::build_surface(cfg);
            const int k = dl_opts.k.empty() ? cfg.k_values.back() : dl_opts.k.front();
            emit(dl_opts.out_path, sgc::to_csv(sgc::deadline_curve(surface, cfg.eps_th, k)));
        } else if (*al) {
            sgc::SimConfig cfg = resolve_config(al_opts);
            if (al_opts.seed) cfg.toy.seed = *al_opts.seed;
            const auto surface = sgc::build_surface(cfg);
            const double budget = al_opts.bandwidth.empty() ? 3e5 : al_opts.bandwidth.front();
            const int k = al_opts.k.empty() ? cfg.k_values.back() : al_opts.k.front();
            const sgc::LinkPair links{{cfg.data_size_mask, sgc::db_to_linear(gamma_s_db)},
                                      {cfg.data_size_text, sgc::db_to_linear(gamma_l_db)}};
            std::vector<sgc::Allocation> out;
            if (policy == "benchmark1" || policy == "all") {
                out.push_back(sgc::evaluate_allocation(sgc::allocate_benchmark1(links, budget), links, surface));
            }
            if (policy == "benchmark2" || policy == "all") {
                out.push_back(sgc::evaluate_allocation(sgc::allocate_benchmark2(links, budget), links, surface));
            }
            if (policy == "proposed" || policy == "all") {
                out.push_back(sgc::allocate_proposed(surface, links, budget, k, cfg.eps_th));
            }
            nlohmann::json doc;
            if (out.size() == 1) {
                doc = allocation_json(out.front(), budget);
            } else {
                doc = nlohmann::json::array();
                for (const auto& a : out) doc.push_back(allocation_json(a, budget));
            }
            emit(al_opts.out_path, doc.dump(2) + "\n");
        } else if (*sw) {
            sgc::SimConfig cfg = resolve_config(sw_opts);
            if (sw_opts.seed) cfg.base_seed = *sw_opts.seed;
            const auto records = sgc::run_sweep(cfg);
            const auto summary = sgc::summarize(records);
            emit(sw_opts.out_path, sgc::records_csv(records));
            std::string spath = summary_path;
            if (spath.empty() && !sw_opts.out_path.empty()) spath = sw_opts.out_path + ".summary.csv";
            if (spath.empty()) {
                std::cout << '\n';
                std::cout << sgc::summary_csv(summary);
            } else {
                sgc::write_text(spath, sgc::summary_csv(summary));
            }
        }
    } catch (const sgc::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const sgc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sgc::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sgc::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
