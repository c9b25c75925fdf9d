#pragma once

#include <cstdint>
#include <random>

namespace sgc {

/// Payload size and channel state of one modality's link.
struct LinkSpec {
    std::int64_t data_size_bits = 1;
    double snr_linear = 1.0;

    /// Throws DomainError unless data_size >= 1 and snr is positive and finite.
    void validate() const;

    /// log2(1 + snr), bits/s/Hz.
    double spectral_efficiency() const;
};

/// Gamma(shape, scale) distribution of the channel power gain |h|^2.
struct FadingModel {
    double shape = 0.5;
    double scale = 2.0;

    void validate() const;
    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

/// 1 KB = 8192 bits throughout.
inline constexpr std::int64_t kBitsPerKilobyte = 8192;

double db_to_linear(double db);
double linear_to_db(double linear);

/// Seconds to deliver the link's payload over `bandwidth_hz`.
/// Throws DomainError for non-positive bandwidth.
double transmission_time(const LinkSpec& link, double bandwidth_hz);

/// Bandwidth that delivers the payload in exactly `deadline_s`.
/// A zero deadline throws InfiniteBandwidthError; a negative one DomainError.
double required_bandwidth(const LinkSpec& link, double deadline_s);

/// Draws one |h|^2 sample. Only `rng` is mutated.
double sample_gain(std::mt19937_64& rng, const FadingModel& model);

}  // namespace sgc
