#include "sgc/channel.hpp"

#include <cmath>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

void LinkSpec::validate() const {
    if (data_size_bits < 1) {
        throw DomainError("link data size must be >= 1 bit, got " + std::to_string(data_size_bits));
    }
    if (!(snr_linear > 0.0) || !std::isfinite(snr_linear)) {
        throw DomainError("link snr must be positive and finite");
    }
}

double LinkSpec::spectral_efficiency() const { return std::log2(1.0 + snr_linear); }

void FadingModel::validate() const {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
        throw DomainError("fading shape and scale must be positive");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double transmission_time(const LinkSpec& link, double bandwidth_hz) {
    link.validate();
    if (!(bandwidth_hz > 0.0)) {
        throw DomainError("bandwidth must be positive");
    }
    return static_cast<double>(link.data_size_bits) / (bandwidth_hz * link.spectral_efficiency());
}

double required_bandwidth(const LinkSpec& link, double deadline_s) {
    link.validate();
    if (deadline_s < 0.0 || std::isnan(deadline_s)) {
        throw DomainError("deadline must be non-negative");
    }
    if (deadline_s == 0.0) {
        throw InfiniteBandwidthError();
    }
    return static_cast<double>(link.data_size_bits) / (deadline_s * link.spectral_efficiency());
}

double sample_gain(std::mt19937_64& rng, const FadingModel& model) {
    model.validate();
    std::gamma_distribution<double> dist(model.shape, model.scale);
    return dist(rng);
}

}  // namespace sgc
