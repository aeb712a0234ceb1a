#pragma once

#include "stakecast/series.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace stakecast {

enum class SynthKind { Constant, LinearTrend, Ar1, SineNoise, Burst };

std::string_view synth_kind_name(SynthKind kind) noexcept;
std::optional<SynthKind> parse_synth_kind(std::string_view name) noexcept;

/// Recipe for a deterministic synthetic daily series. Fields not used by the
/// chosen kind are ignored.
struct SynthSpec {
    SynthKind kind = SynthKind::Constant;
    int length = 1;
    Date start = Date{std::chrono::year{2021} / 6 / 23};
    std::uint64_t seed = 0;

    double level = 1.0;
    double slope = 0.0;      // linear_trend: increment per day
    double phi = 0.0;        // ar1: autoregressive coefficient, |phi| < 1
    double sigma = 0.0;      // ar1, sine_noise: innovation standard deviation
    double amplitude = 0.0;  // sine_noise
    double period = 30.0;    // sine_noise, days
    double burst_magnitude = 1.0;  // burst: multiplier inside the window
    int burst_start = 0;
    int burst_length = 0;

    /// Throws InvalidSpec when length < 1, sigma < 0, |phi| >= 1 (ar1),
    /// period <= 0 (sine_noise) or a negative burst window.
    void validate() const;
};

/// Generates the series described by `spec`:
///
///   constant      x_t = level
///   linear_trend  x_t = level + slope * t
///   ar1           x_t = level + phi * (x_{t-1} - level) + e_t,
///                 x_0 = level + e_0 / sqrt(1 - phi^2)   (stationary start)
///   sine_noise    x_t = level + amplitude * sin(2 pi t / period) + e_t
///   burst         x_t = level, times burst_magnitude on
///                 [burst_start, burst_start + burst_length)
///
/// with e_t ~ Normal(0, sigma^2). Noise comes from std::mt19937_64 seeded
/// with `seed`, mapped to uniforms on 53 bits and to normals by Box-Muller,
/// so output is bit-identical across platforms and standard libraries.
DailySeries generate(const SynthSpec& spec);

}  // namespace stakecast
