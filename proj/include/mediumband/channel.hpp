// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulator for mediumband wireless channels
// Copyright (C) 2026 The mediumband authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mediumband {

using cdouble = std::complex<double>;

inline constexpr double kDefaultLambda = 10.0;

/// One propagation path: complex amplitude and excess delay in seconds.
struct MultipathComponent
{
    cdouble gain{};
    double delay = 0.0;

    friend bool operator==(const MultipathComponent &, const MultipathComponent &) = default;
};

/// Ordered multipath delay profile.
///
/// Components are kept sorted by delay (stable, so equal delays keep their
/// insertion order). The earliest component must sit at delay 0: delays are
/// excess delays relative to the first arrival.
class DelayProfile
{
  public:
    explicit DelayProfile(std::vector<MultipathComponent> components)
        : components_(std::move(components))
    {
        if (components_.empty())
            throw std::invalid_argument("DelayProfile: at least one component is required");
        for (const auto &c : components_)
        {
            if (!std::isfinite(c.delay) || c.delay < 0.0)
                throw std::invalid_argument("DelayProfile: delays must be finite and non-negative");
            if (!std::isfinite(c.gain.real()) || !std::isfinite(c.gain.imag()))
                throw std::invalid_argument("DelayProfile: gains must be finite");
        }
        std::stable_sort(components_.begin(), components_.end(),
                         [](const auto &a, const auto &b) { return a.delay < b.delay; });
        if (components_.front().delay != 0.0)
            throw std::invalid_argument("DelayProfile: first component must have delay 0");
    }

    const std::vector<MultipathComponent> &components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }
    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }
    const MultipathComponent &operator[](std::size_t i) const { return components_[i]; }

    double total_power() const noexcept
    {
        double p = 0.0;
        for (const auto &c : components_)
            p += std::norm(c.gain);
        return p;
    }

    /// Same delays, every gain multiplied by alpha.
    DelayProfile scaled(cdouble alpha) const
    {
        auto out = components_;
        for (auto &c : out)
            c.gain *= alpha;
        return DelayProfile(std::move(out));
    }

    /// Profile with the extra components merged in delay order.
    DelayProfile with(const std::vector<MultipathComponent> &extra) const
    {
        auto out = components_;
        out.insert(out.end(), extra.begin(), extra.end());
        return DelayProfile(std::move(out));
    }

    friend bool operator==(const DelayProfile &, const DelayProfile &) = default;

  private:
    std::vector<MultipathComponent> components_;
};

enum class BandClass
{
    Narrowband,
    Mediumband,
    Broadband
};

constexpr std::string_view to_string(BandClass c) noexcept
{
    switch (c)
    {
    case BandClass::Narrowband: return "Narrowband";
    case BandClass::Mediumband: return "Mediumband";
    case BandClass::Broadband: return "Broadband";
    }
    return "Unknown";
}

/// An operating point on the (delay spread, symbol period) plane.
struct SystemPoint
{
    double t_m = 0.0;
    double t_s = 0.0;
    double lambda = kDefaultLambda;

    // t_m = 0 is tolerated as the degenerate narrowband limit (pds = 0).
    void validate() const
    {
        if (!(t_m >= 0.0) || !std::isfinite(t_m))
            throw std::invalid_argument("SystemPoint: t_m must be finite and non-negative");
        if (!(t_s > 0.0) || !std::isfinite(t_s))
            throw std::invalid_argument("SystemPoint: t_s must be positive");
        if (!(lambda > 1.0) || !std::isfinite(lambda))
            throw std::invalid_argument("SystemPoint: lambda must exceed 1");
    }
};

inline double max_excess_delay(const DelayProfile &profile) noexcept
{
    return profile.components().back().delay - profile.components().front().delay;
}

/// Power-weighted standard deviation of the delays (weights |gain|^2).
/// Zero when the profile carries no power.
inline double rms_delay_spread(const DelayProfile &profile) noexcept
{
    // Weighted incremental mean/variance (West 1979).
    double w_sum = 0.0, mean = 0.0, m2 = 0.0;
    for (const auto &c : profile)
    {
        const double w = std::norm(c.gain);
        if (w == 0.0)
            continue;
        w_sum += w;
        const double delta = c.delay - mean;
        mean += (w / w_sum) * delta;
        m2 += w * delta * (c.delay - mean);
    }
    if (w_sum == 0.0)
        return 0.0;
    return std::sqrt(std::max(0.0, m2 / w_sum));
}

/// Percentage delay spread, 100 * t_m / t_s.
inline double pds(const SystemPoint &point)
{
    point.validate();
    return 100.0 * point.t_m / point.t_s;
}

/// Broadband for t_s <= t_m, Narrowband for t_s >= lambda * t_m, Mediumband in between.
inline BandClass classify(const SystemPoint &point)
{
    point.validate();
    if (point.t_s <= point.t_m)
        return BandClass::Broadband;
    if (point.t_s >= point.lambda * point.t_m)
        return BandClass::Narrowband;
    return BandClass::Mediumband;
}

/// Parameters of the random NLoS profile generator.
struct ProfileSpec
{
    std::size_t n_paths = 8;
    double t_m = 1e-6;
    // Exponential power-delay envelope exp(-delay / decay); infinity means uniform.
    double decay = std::numeric_limits<double>::infinity();

    void validate() const
    {
        if (n_paths == 0)
            throw std::invalid_argument("ProfileSpec: n_paths must be at least 1");
        if (!(t_m > 0.0) || !std::isfinite(t_m))
            throw std::invalid_argument("ProfileSpec: t_m must be positive and finite");
        if (!(decay > 0.0))
            throw std::invalid_argument("ProfileSpec: decay constant must be positive");
    }
};

/// Draws one NLoS realization.
///
/// Delays: 0, n_paths-2 sorted i.i.d. uniform on (0, t_m), and t_m. The
/// uniforms are drawn on (0, 1) and scaled, so two specs differing only in
/// t_m see the same random numbers for the same engine state.
/// Gains: circularly-symmetric complex Gaussian with variance w_n, where the
/// envelope weights w_n are normalised to sum to one, so E[sum |gain|^2] = 1.
/// A single path has no multipath to fade against: it gets unit modulus and a
/// uniform random phase.
template <class URBG>
DelayProfile generate_nlos_profile(const ProfileSpec &spec, URBG &engine)
{
    spec.validate();
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    constexpr double two_pi = 6.283185307179586476925286766559;

    if (spec.n_paths == 1)
        return DelayProfile({{std::polar(1.0, two_pi * uniform(engine)), 0.0}});

    std::vector<double> delays;
    delays.reserve(spec.n_paths);
    delays.push_back(0.0);
    for (std::size_t i = 0; i + 2 < spec.n_paths; ++i)
    {
        double u = uniform(engine);
        while (u == 0.0)
            u = uniform(engine);
        delays.push_back(u * spec.t_m);
    }
    std::sort(delays.begin() + 1, delays.end());
    delays.push_back(spec.t_m);

    std::vector<double> weights(delays.size());
    double w_sum = 0.0;
    for (std::size_t i = 0; i < delays.size(); ++i)
    {
        weights[i] = std::isinf(spec.decay) ? 1.0 : std::exp(-delays[i] / spec.decay);
        w_sum += weights[i];
    }

    std::vector<MultipathComponent> comps(delays.size());
    for (std::size_t i = 0; i < delays.size(); ++i)
    {
        const double sigma = std::sqrt(weights[i] / w_sum / 2.0);
        const double re = normal(engine) * sigma;
        const double im = normal(engine) * sigma;
        comps[i] = {{re, im}, delays[i]};
    }
    return DelayProfile(std::move(comps));
}

inline DelayProfile generate_nlos_profile(const ProfileSpec &spec, std::uint64_t seed)
{
    auto engine = make_engine(seed);
    return generate_nlos_profile(spec, engine);
}

} // namespace mediumband
