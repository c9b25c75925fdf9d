#include "sgc/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sgc/error.hpp"

namespace sgc {

namespace {

constexpr double kParametricPsnrRef = 60.0;

using json = nlohmann::json;

double require_number(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(key, "missing field");
    const json& v = doc.at(key);
    if (!v.is_number()) throw ParseError(key, "expected a number");
    return v.get<double>();
}

std::vector<double> flatten_grid(const json& grid, int& side) {
    if (!grid.is_array() || grid.empty()) throw ParseError("grid", "expected a non-empty array");
    std::vector<double> out;
    if (grid.front().is_array()) {
        const std::size_t rows = grid.size();
        for (std::size_t r = 0; r < rows; ++r) {
            const json& row = grid[r];
            const std::string where = "grid[" + std::to_string(r) + "]";
            if (!row.is_array()) throw ParseError(where, "expected a row array");
            if (row.size() != rows) throw ValidationError(where + ": grid is not square");
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c].is_null()) {
                    throw ValidationError(where + "[" + std::to_string(c) + "]: non-finite value");
                }
                if (!row[c].is_number()) {
                    throw ParseError(where + "[" + std::to_string(c) + "]", "expected a number");
                }
                out.push_back(row[c].get<double>());
            }
        }
        side = static_cast<int>(rows);
        return out;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // Non-finite values arrive as null from JSON writers that cannot encode them.
        if (grid[i].is_null()) throw ValidationError("grid[" + std::to_string(i) + "]: non-finite value");
        if (!grid[i].is_number()) throw ParseError("grid[" + std::to_string(i) + "]", "expected a number");
        out.push_back(grid[i].get<double>());
    }
    const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(out.size()))));
    if (static_cast<std::size_t>(n) * n != out.size()) {
        throw ValidationError("grid length " + std::to_string(out.size()) + " is not a perfect square");
    }
    side = n;
    return out;
}

}  // namespace

QualitySurface::QualitySurface(double omega, int steps, std::vector<double> psnr, double psnr_cap,
                               std::optional<double> psnr_ref)
    : omega_(omega), steps_(steps), psnr_(std::move(psnr)), psnr_cap_(psnr_cap), psnr_ref_(0.0) {
    if (!(omega_ > 0.0) || !std::isfinite(omega_)) throw ValidationError("omega must be positive and finite");
    if (steps_ < 1) throw ValidationError("surface needs at least one step (a 2x2 grid)");
    const auto n = static_cast<std::size_t>(steps_ + 1);
    if (psnr_.size() != n * n) {
        throw ValidationError("grid has " + std::to_string(psnr_.size()) + " entries, expected " +
                              std::to_string(n * n));
    }
    if (!std::isfinite(psnr_cap_)) throw ValidationError("psnr_cap must be finite");
    for (std::size_t i = 0; i < psnr_.size(); ++i) {
        if (!std::isfinite(psnr_[i])) throw ValidationError("grid[" + std::to_string(i) + "]: non-finite value");
        if (psnr_[i] > psnr_cap_) throw ValidationError("grid[" + std::to_string(i) + "]: exceeds psnr_cap");
    }
    if (psnr_ref) {
        psnr_ref_ = *psnr_ref;
    } else {
        psnr_ref_ = *std::max_element(psnr_.begin() + 1, psnr_.end());
    }
    if (!(psnr_ref_ > 0.0) || !std::isfinite(psnr_ref_)) {
        throw ValidationError("normalization reference PSNR must be positive");
    }
}

QualitySurface QualitySurface::from_toy(const ToyDiffusionConfig& cfg, const ConditioningSet& cond) {
    return QualitySurface(cfg.step_duration, cfg.steps, generate_grid(cfg, cond), cfg.psnr_cap);
}

QualitySurface QualitySurface::from_toy(const ToyDiffusionConfig& cfg) {
    return from_toy(cfg, ConditioningSet::from_seed(cfg.latent_dim, cfg.seed));
}

QualitySurface QualitySurface::from_parametric(double weight_mask, double weight_text, double exponent, int steps,
                                               double omega, double psnr_cap) {
    if (!(weight_mask >= 0.0) || !(weight_text >= 0.0)) throw DomainError("parametric weights must be >= 0");
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) throw DomainError("parametric exponent must be >= 1");
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (!(psnr_cap >= kParametricPsnrRef)) throw DomainError("psnr_cap must be >= 60 dB for parametric surfaces");

    const int n = steps + 1;
    const double horizon = steps * omega;
    std::vector<double> grid(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        const double us = std::min(a * omega / horizon, 1.0);
        for (int b = 0; b < n; ++b) {
            const double ul = std::min(b * omega / horizon, 1.0);
            const double q =
                std::clamp(1.0 - weight_mask * std::pow(us, exponent) - weight_text * std::pow(ul, exponent), 0.0, 1.0);
            grid[static_cast<std::size_t>(a) * n + b] = q * kParametricPsnrRef;
        }
    }
    grid[0] = psnr_cap;
    return QualitySurface(omega, steps, std::move(grid), psnr_cap, kParametricPsnrRef);
}

QualitySurface QualitySurface::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
    const double omega = require_number(doc, "omega");
    const double cap = require_number(doc, "psnr_cap");
    if (!doc.contains("grid")) throw ParseError("grid", "missing field");
    int side = 0;
    std::vector<double> grid = flatten_grid(doc.at("grid"), side);
    if (doc.contains("T")) {
        const json& t = doc.at("T");
        if (!t.is_number_integer()) throw ParseError("T", "expected an integer");
        if (t.get<long long>() != side - 1) {
            throw ValidationError("T = " + std::to_string(t.get<long long>()) + " does not match a " +
                                  std::to_string(side) + "x" + std::to_string(side) + " grid");
        }
    }
    std::optional<double> ref;
    if (doc.contains("psnr_ref")) ref = require_number(doc, "psnr_ref");
    return QualitySurface(omega, side - 1, std::move(grid), cap, ref);
}

QualitySurface QualitySurface::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open surface file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string QualitySurface::to_json() const {
    json doc;
    doc["omega"] = omega_;
    doc["T"] = steps_;
    doc["psnr_cap"] = psnr_cap_;
    doc["psnr_ref"] = psnr_ref_;
    doc["grid"] = psnr_;
    return doc.dump();
}

void QualitySurface::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write surface file '" + path + "'");
    out << to_json() << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::size_t QualitySurface::index(GridPoint p) const {
    if (p.mask_step < 0 || p.mask_step > steps_ || p.text_step < 0 || p.text_step > steps_) {
        throw DomainError("grid point out of range");
    }
    return static_cast<std::size_t>(p.mask_step) * static_cast<std::size_t>(steps_ + 1) +
           static_cast<std::size_t>(p.text_step);
}

double QualitySurface::psnr_at(GridPoint p) const { return psnr_[index(p)]; }

double QualitySurface::q_at(GridPoint p) const { return std::clamp(psnr_[index(p)] / psnr_ref_, 0.0, 1.0); }

QualitySample QualitySurface::evaluate(double t_mask, double t_text) const {
    if (t_mask < 0.0 || t_text < 0.0 || std::isnan(t_mask) || std::isnan(t_text)) {
        throw DomainError("delays must be non-negative");
    }
    const GridPoint p{arrival_step(t_mask, omega_, steps_), arrival_step(t_text, omega_, steps_)};
    return {psnr_at(p), q_at(p)};
}

std::vector<GridPoint> QualitySurface::superlevel_set(double epsilon) const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
    std::vector<GridPoint> out;
    for (int a = 0; a <= steps_; ++a) {
        for (int b = 0; b <= steps_; ++b) {
            if (q_at({a, b}) >= epsilon) out.push_back({a, b});
        }
    }
    return out;
}

double QualitySurface::max_q() const {
    double best = 0.0;
    for (int a = 0; a <= steps_; ++a) {
        for (int b = 0; b <= steps_; ++b) best = std::max(best, q_at({a, b}));
    }
    return best;
}

}  // namespace sgc
