#include "stakecast/synth.hpp"

#include "stakecast/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace stakecast {

namespace {

/// Standard normals from a fully specified engine. std::normal_distribution
/// is implementation-defined, hence the explicit Box-Muller.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (cached_) {
            cached_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        cached_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool cached_ = false;
};

}  // namespace

std::string_view synth_kind_name(SynthKind kind) noexcept {
    switch (kind) {
        case SynthKind::Constant: return "constant";
        case SynthKind::LinearTrend: return "linear_trend";
        case SynthKind::Ar1: return "ar1";
        case SynthKind::SineNoise: return "sine_noise";
        case SynthKind::Burst: return "burst";
    }
    return "unknown";
}

std::optional<SynthKind> parse_synth_kind(std::string_view name) noexcept {
    for (auto k : {SynthKind::Constant, SynthKind::LinearTrend, SynthKind::Ar1, SynthKind::SineNoise,
                   SynthKind::Burst}) {
        if (synth_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

void SynthSpec::validate() const {
    auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidSpec, why); };
    if (length < 1) throw bad("length must be at least 1");
    if (!std::isfinite(level) || !std::isfinite(slope) || !std::isfinite(amplitude) ||
        !std::isfinite(burst_magnitude)) {
        throw bad("parameters must be finite");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw bad("sigma must be a finite non-negative number");
    if (kind == SynthKind::Ar1 && !(std::abs(phi) < 1.0)) {
        throw bad("ar1 requires |phi| < 1, got " + std::to_string(phi));
    }
    if (kind == SynthKind::SineNoise && !(period > 0.0)) throw bad("sine_noise requires period > 0");
    if (kind == SynthKind::Burst && (burst_start < 0 || burst_length < 0)) {
        throw bad("burst window must be non-negative");
    }
}

DailySeries generate(const SynthSpec& spec) {
    spec.validate();
    const auto n = static_cast<std::size_t>(spec.length);
    std::vector<double> values(n, spec.level);
    NormalSource normal(spec.seed);

    switch (spec.kind) {
        case SynthKind::Constant:
            break;
        case SynthKind::LinearTrend:
            for (std::size_t t = 0; t < n; ++t) values[t] = spec.level + spec.slope * static_cast<double>(t);
            break;
        case SynthKind::Ar1: {
            double dev = spec.sigma * normal() / std::sqrt(1.0 - spec.phi * spec.phi);
            values[0] = spec.level + dev;
            for (std::size_t t = 1; t < n; ++t) {
                dev = spec.phi * dev + spec.sigma * normal();
                values[t] = spec.level + dev;
            }
            break;
        }
        case SynthKind::SineNoise:
            for (std::size_t t = 0; t < n; ++t) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / spec.period;
                values[t] = spec.level + spec.amplitude * std::sin(angle) + spec.sigma * normal();
            }
            break;
        case SynthKind::Burst: {
            const auto begin = std::min<std::size_t>(static_cast<std::size_t>(spec.burst_start), n);
            const auto end = std::min<std::size_t>(begin + static_cast<std::size_t>(spec.burst_length), n);
            for (std::size_t t = begin; t < end; ++t) values[t] = spec.level * spec.burst_magnitude;
            break;
        }
    }
    return DailySeries(spec.start, std::move(values));
}

}  // namespace stakecast
