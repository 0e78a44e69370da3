#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "attikit/attitude.hpp"
#include "attikit/fit.hpp"

namespace attikit {

// Classical coning motion: the body axis sweeps a cone of half-angle alpha at
// frequency fc while gyros sample at fs, N samples per attitude update.
template <typename Scalar>
struct ConingParams {
    Scalar alpha = Scalar(0);  // cone half-angle, rad
    Scalar fc = Scalar(1);     // coning frequency, Hz
    Scalar fs = Scalar(1000);  // gyro sampling frequency, Hz
    int samples_per_update = 8;
    Scalar duration = Scalar(1);  // total run, s

    Scalar spin_rate() const { return Scalar(2) * Scalar(3.14159265358979323846L) * fc; }
    Scalar sample_dt() const { return Scalar(1) / fs; }
    Scalar update_dt() const { return Scalar(samples_per_update) / fs; }
    int update_count() const
    {
        return static_cast<int>(std::llround(static_cast<double>(duration / update_dt())));
    }

    void validate() const
    {
        if (!(fc > Scalar(0))) throw std::invalid_argument("ConingParams: fc must be positive");
        if (!(fs > Scalar(0))) throw std::invalid_argument("ConingParams: fs must be positive");
        if (samples_per_update < 1) {
            throw std::invalid_argument("ConingParams: samples_per_update must be >= 1");
        }
        if (!(alpha >= Scalar(0))) throw std::invalid_argument("ConingParams: alpha must be >= 0");
    }
};

using ConingParamsd = ConingParams<double>;

struct NoiseParams {
    double arw = 0.0;  // angle random walk, rad/sqrt(s)
    std::uint64_t seed = 0;
};

/// Body angular rate of the coning motion at time t.
template <typename Scalar>
Vec3<Scalar> coning_rate(const ConingParams<Scalar>& p, Scalar t)
{
    const Scalar w = p.spin_rate();
    const Scalar half = std::sin(p.alpha / Scalar(2));
    return Vec3<Scalar>(-Scalar(2) * w * half * half, -w * std::sin(p.alpha) * std::sin(w * t),
                        w * std::sin(p.alpha) * std::cos(w * t));
}

/// Closed-form integral of the rate over [t0, t1].
template <typename Scalar>
Vec3<Scalar> coning_increment(const ConingParams<Scalar>& p, Scalar t0, Scalar t1)
{
    const Scalar w = p.spin_rate();
    const Scalar half = std::sin(p.alpha / Scalar(2));
    const Scalar sa = std::sin(p.alpha);
    return Vec3<Scalar>(-Scalar(2) * w * half * half * (t1 - t0),
                        sa * (std::cos(w * t1) - std::cos(w * t0)),
                        sa * (std::sin(w * t1) - std::sin(w * t0)));
}

/// Exact attitude of the coning motion at time t.
template <typename Scalar>
Quat<Scalar> coning_true_quat(const ConingParams<Scalar>& p, Scalar t)
{
    const Scalar w = p.spin_rate();
    return Quat<Scalar>(std::cos(p.alpha / Scalar(2)), Scalar(0),
                        std::sin(p.alpha / Scalar(2)) * std::cos(w * t),
                        std::sin(p.alpha / Scalar(2)) * std::sin(w * t));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One standard-normal triple per global sample index; every algorithm reading
// sample m sees the same draw regardless of batching or evaluation order.
inline Vec3d sample_noise_triple(std::uint64_t seed, std::int64_t sample_index)
{
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(sample_index))));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec3d z;
    z[0] = normal(gen);
    z[1] = normal(gen);
    z[2] = normal(gen);
    return z;
}

}  // namespace detail

/// N gyro samples over the update interval starting at interval_start.
/// Increment noise scales with arw*sqrt(dt), rate noise with arw/sqrt(dt),
/// drawing the same underlying triples either way.
inline GyroBatchd synth_batch(const ConingParamsd& p, double interval_start, GyroKind kind,
                              const NoiseParams& noise)
{
    p.validate();
    const double dt = p.sample_dt();
    GyroBatchd batch;
    batch.kind = kind;
    batch.dt = dt;
    batch.samples.resize(static_cast<std::size_t>(p.samples_per_update));
    // sample times live on the global grid so that every batching of the same
    // stream sees bit-identical values
    const std::int64_t base = std::llround(interval_start * p.fs);
    for (int k = 1; k <= p.samples_per_update; ++k) {
        const double t1 = static_cast<double>(base + k) * dt;
        const double t0 = static_cast<double>(base + k - 1) * dt;
        Vec3d value = (kind == GyroKind::Rate) ? coning_rate(p, t1) : coning_increment(p, t0, t1);
        if (noise.arw > 0.0) {
            const Vec3d z = detail::sample_noise_triple(noise.seed, base + k - 1);
            const double scale = (kind == GyroKind::Rate) ? noise.arw / std::sqrt(dt)
                                                          : noise.arw * std::sqrt(dt);
            value += scale * z;
        }
        batch.samples[static_cast<std::size_t>(k) - 1] = value;
    }
    return batch;
}

}  // namespace attikit
