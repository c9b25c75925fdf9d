#include "sgc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sgc/deadline.hpp"
#include "sgc/error.hpp"
#include "sgc/format.hpp"

namespace sgc {

namespace {

using json = nlohmann::json;

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& scope) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(scope + key, e.what());
    }
}

void read_toy(const json& obj, ToyDiffusionConfig& toy) {
    if (!obj.is_object()) throw ParseError("toy", "expected an object");
    read_field(obj, "latent_dim", toy.latent_dim, "toy.");
    read_field(obj, "steps", toy.steps, "toy.");
    read_field(obj, "step_duration", toy.step_duration, "toy.");
    read_field(obj, "pull_rate", toy.pull_rate, "toy.");
    read_field(obj, "weight_mask", toy.weight_mask, "toy.");
    read_field(obj, "weight_text", toy.weight_text, "toy.");
    read_field(obj, "seed", toy.seed, "toy.");
    read_field(obj, "psnr_cap", toy.psnr_cap, "toy.");
    read_field(obj, "max_signal", toy.max_signal, "toy.");
}

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

double mean_of(std::vector<double> values) {
    // Sorted summation keeps the result independent of record order.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev_of(std::vector<double> values, double mean) {
    for (double& v : values) v = (v - mean) * (v - mean);
    return std::sqrt(mean_of(std::move(values)));
}

}  // namespace

void SimConfig::validate() const {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (bandwidth_sweep.empty()) throw ValidationError("bandwidth_sweep must not be empty");
    for (double b : bandwidth_sweep) {
        if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("bandwidth_sweep values must be positive");
    }
    if (!(eps_th >= 0.0 && eps_th < 1.0)) throw ValidationError("eps_th must lie in [0, 1)");
    if (k_values.empty()) throw ValidationError("k_values must not be empty");
    for (int k : k_values) {
        if (k < 2) throw ValidationError("every K must be >= 2");
    }
    if (!(power_over_noise > 0.0) || !std::isfinite(power_over_noise)) {
        throw ValidationError("power_over_noise must be positive");
    }
    if (data_size_mask < 1 || data_size_text < 1) throw ValidationError("data sizes must be >= 1 bit");
    try {
        fading.validate();
        toy.validate();
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
    if (surface_kind == SurfaceKind::File && surface_path.empty()) {
        throw ValidationError("surface source 'file:' needs a path");
    }
}

SimConfig SimConfig::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

    SimConfig cfg;
    read_field(doc, "bandwidth_sweep", cfg.bandwidth_sweep, "");
    read_field(doc, "trials", cfg.trials, "");
    read_field(doc, "base_seed", cfg.base_seed, "");
    read_field(doc, "power_over_noise", cfg.power_over_noise, "");
    read_field(doc, "data_size_mask", cfg.data_size_mask, "");
    read_field(doc, "data_size_text", cfg.data_size_text, "");
    read_field(doc, "k_values", cfg.k_values, "");
    read_field(doc, "eps_th", cfg.eps_th, "");
    if (doc.contains("fading")) {
        const json& f = doc.at("fading");
        if (!f.is_object()) throw ParseError("fading", "expected an object");
        read_field(f, "shape", cfg.fading.shape, "fading.");
        read_field(f, "scale", cfg.fading.scale, "fading.");
    }
    if (doc.contains("surface_source")) {
        std::string source;
        read_field(doc, "surface_source", source, "");
        if (source == "toy") {
            cfg.surface_kind = SurfaceKind::Toy;
        } else if (source == "parametric") {
            cfg.surface_kind = SurfaceKind::Parametric;
        } else if (source.rfind("file:", 0) == 0) {
            cfg.surface_kind = SurfaceKind::File;
            cfg.surface_path = source.substr(5);
        } else {
            throw ParseError("surface_source", "expected 'toy', 'parametric' or 'file:<path>'");
        }
    }
    if (doc.contains("toy")) read_toy(doc.at("toy"), cfg.toy);
    if (doc.contains("parametric")) {
        const json& p = doc.at("parametric");
        if (!p.is_object()) throw ParseError("parametric", "expected an object");
        read_field(p, "weight_mask", cfg.parametric.weight_mask, "parametric.");
        read_field(p, "weight_text", cfg.parametric.weight_text, "parametric.");
        read_field(p, "exponent", cfg.parametric.exponent, "parametric.");
    }
    cfg.validate();
    return cfg;
}

SimConfig SimConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string SimConfig::to_json() const {
    json doc;
    doc["bandwidth_sweep"] = bandwidth_sweep;
    doc["trials"] = trials;
    doc["base_seed"] = base_seed;
    doc["fading"] = {{"shape", fading.shape}, {"scale", fading.scale}};
    doc["power_over_noise"] = power_over_noise;
    doc["data_size_mask"] = data_size_mask;
    doc["data_size_text"] = data_size_text;
    doc["k_values"] = k_values;
    doc["eps_th"] = eps_th;
    switch (surface_kind) {
        case SurfaceKind::Toy: doc["surface_source"] = "toy"; break;
        case SurfaceKind::Parametric: doc["surface_source"] = "parametric"; break;
        case SurfaceKind::File: doc["surface_source"] = "file:" + surface_path; break;
    }
    doc["toy"] = {{"latent_dim", toy.latent_dim},     {"steps", toy.steps},
                  {"step_duration", toy.step_duration}, {"pull_rate", toy.pull_rate},
                  {"weight_mask", toy.weight_mask},   {"weight_text", toy.weight_text},
                  {"seed", toy.seed},                 {"psnr_cap", toy.psnr_cap},
                  {"max_signal", toy.max_signal}};
    doc["parametric"] = {{"weight_mask", parametric.weight_mask},
                         {"weight_text", parametric.weight_text},
                         {"exponent", parametric.exponent}};
    return doc.dump(2);
}

QualitySurface build_surface(const SimConfig& config) {
    switch (config.surface_kind) {
        case SurfaceKind::Toy: return QualitySurface::from_toy(config.toy);
        case SurfaceKind::Parametric:
            return QualitySurface::from_parametric(config.parametric.weight_mask, config.parametric.weight_text,
                                                   config.parametric.exponent, config.toy.steps,
                                                   config.toy.step_duration, config.toy.psnr_cap);
        case SurfaceKind::File: return QualitySurface::load(config.surface_path);
    }
    throw ValidationError("unknown surface source");
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::string> policy_names(const SimConfig& config) {
    std::vector<std::string> names{"benchmark1", "benchmark2"};
    for (int k : config.k_values) names.push_back(proposed_policy_name(k));
    return names;
}

std::vector<TrialRecord> run_sweep(const SimConfig& config) {
    config.validate();
    return run_sweep(config, build_surface(config));
}

std::vector<TrialRecord> run_sweep(const SimConfig& config, const QualitySurface& surface) {
    config.validate();
    std::vector<DeadlineCurve> curves;
    for (int k : config.k_values) curves.push_back(deadline_curve(surface, config.eps_th, k));

    std::vector<TrialRecord> records;
    records.reserve(static_cast<std::size_t>(config.trials) * config.bandwidth_sweep.size() *
                    (2 + config.k_values.size()));
    for (int trial = 0; trial < config.trials; ++trial) {
        std::mt19937_64 rng(trial_seed(config.base_seed, trial));
        const double gamma_s = config.power_over_noise * sample_gain(rng, config.fading);
        const double gamma_l = config.power_over_noise * sample_gain(rng, config.fading);
        const LinkPair links{{config.data_size_mask, gamma_s}, {config.data_size_text, gamma_l}};

        for (double budget : config.bandwidth_sweep) {
            std::vector<Allocation> allocs;
            allocs.push_back(evaluate_allocation(allocate_benchmark1(links, budget), links, surface));
            allocs.push_back(evaluate_allocation(allocate_benchmark2(links, budget), links, surface));
            for (const auto& curve : curves) allocs.push_back(allocate_proposed(surface, curve, links, budget));

            for (const auto& a : allocs) {
                records.push_back({trial, budget, a.policy, gamma_s, gamma_l, a.B_s, a.B_l, a.t_s, a.t_l,
                                   a.eps_star, a.achieved_psnr, a.achieved_q});
            }
        }
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw DomainError("cannot summarize an empty record set");
    std::map<std::pair<double, std::string>, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const auto& r : records) {
        auto& g = groups[{r.B_total, r.policy}];
        g.first.push_back(r.psnr);
        g.second.push_back(r.q);
    }
    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (auto& [key, values] : groups) {
        SummaryRow row;
        row.B_total = key.first;
        row.policy = key.second;
        row.count = static_cast<int>(values.first.size());
        row.mean_psnr = mean_of(values.first);
        row.std_psnr = stddev_of(values.first, row.mean_psnr);
        row.mean_q = mean_of(values.second);
        row.std_q = stddev_of(values.second, row.mean_q);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string records_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "trial,B_total,policy,gamma_s,gamma_l,B_s,B_l,t_s,t_l,eps_star,psnr,q\n";
    for (const auto& r : records) {
        out << r.trial << ',' << format_double(r.B_total) << ',' << r.policy << ',' << format_double(r.gamma_s)
            << ',' << format_double(r.gamma_l) << ',' << format_double(r.B_s) << ',' << format_double(r.B_l) << ','
            << format_double(r.t_s) << ',' << format_double(r.t_l) << ',' << optional_text(r.eps_star) << ','
            << format_double(r.psnr) << ',' << format_double(r.q) << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "B_total,policy,mean_psnr,std_psnr,mean_q,std_q\n";
    for (const auto& r : rows) {
        out << format_double(r.B_total) << ',' << r.policy << ',' << format_double(r.mean_psnr) << ','
            << format_double(r.std_psnr) << ',' << format_double(r.mean_q) << ',' << format_double(r.std_q) << '\n';
    }
    return out.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace sgc
