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

#include "campaign.hpp"
#include "channel.hpp"
#include "parallel.hpp"
#include "pulse.hpp"
#include "stats.hpp"
#include "sync.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mediumband {

/// Time-domain channel coefficients h_0 ... h_{L-1}, spaced by t_s.
struct TapVector
{
    std::vector<cdouble> taps;
    double t_s = 0.0;

    void validate() const
    {
        if (taps.empty())
            throw std::invalid_argument("TapVector: at least one tap is required");
        for (const auto &t : taps)
            if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
                throw std::invalid_argument("TapVector: taps must be finite");
    }
};

/// coefficients[k] = sum_l taps[l] exp(-j 2 pi k l / n_fft).
struct SubcarrierResponse
{
    std::vector<cdouble> coefficients;
    std::size_t n_fft = 0;
};

/// taps[l] is the effective tap at tau_hat + l T_s.
inline TapVector extract_generalized_taps(const DelayProfile &profile, const PulseShape &pulse, double tau_hat,
                                          int n_taps)
{
    if (n_taps < 1)
        throw std::invalid_argument("extract_generalized_taps: n_taps must be at least 1");
    TapVector tv{{}, pulse.symbol_period()};
    tv.taps.reserve(static_cast<std::size_t>(n_taps));
    for (int l = 0; l < n_taps; ++l)
        tv.taps.push_back(effective_tap(profile, pulse, tau_hat, l));
    return tv;
}

namespace detail {

// In-place iterative radix-2 transform, exponent sign `sign` (-1 forward).
inline void fft_radix2(std::vector<cdouble> &a, int sign)
{
    constexpr double two_pi = 6.283185307179586476925286766559;
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    // Twiddles come straight from polar() per stage, not by repeated multiplication.
    std::vector<cdouble> w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        w[k] = std::polar(1.0, sign * two_pi * static_cast<double>(k) / static_cast<double>(n));
    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t k = 0; k < len / 2; ++k)
            {
                const cdouble u = a[i + k];
                const cdouble v = a[i + k + len / 2] * w[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
    }
}

} // namespace detail

inline SubcarrierResponse to_frequency_domain(const TapVector &taps, std::size_t n_fft)
{
    taps.validate();
    if (n_fft < taps.taps.size() || !std::has_single_bit(n_fft))
        throw std::invalid_argument("to_frequency_domain: n_fft must be a power of two no shorter than the taps");
    SubcarrierResponse r{std::vector<cdouble>(n_fft), n_fft};
    std::copy(taps.taps.begin(), taps.taps.end(), r.coefficients.begin());
    detail::fft_radix2(r.coefficients, -1);
    return r;
}

/// Inverse of to_frequency_domain; returns all n_fft time-domain samples.
inline std::vector<cdouble> to_time_domain(const SubcarrierResponse &response)
{
    if (response.coefficients.size() != response.n_fft || !std::has_single_bit(response.n_fft))
        throw std::invalid_argument("to_time_domain: malformed response");
    auto a = response.coefficients;
    detail::fft_radix2(a, +1);
    for (auto &v : a)
        v /= static_cast<double>(response.n_fft);
    return a;
}

enum class TapSource
{
    Profile,    // taps extracted from synchronised NLoS profiles
    IidGaussian // i.i.d. CN(0, 1/n_taps) taps, the pure broadband reference
};

struct OfdmOptions
{
    int n_taps = 2;
    std::size_t n_fft = 16;
    TapSource source = TapSource::Profile;
};

struct SubcarrierStats
{
    std::size_t index = 0;
    DipReport dip;
    double deep_fade_prob = 0.0;
    double baseline = 0.0;
    double standard_error = 0.0;
};

/// Per-trial subcarrier coefficients, row-major [trial][subcarrier].
inline std::vector<cdouble> subcarrier_realizations(const CampaignSpec &spec, const OfdmOptions &opt,
                                                    unsigned threads = 1)
{
    spec.validate();
    if (opt.n_taps < 1)
        throw std::invalid_argument("OfdmOptions: n_taps must be at least 1");
    if (opt.n_fft < static_cast<std::size_t>(opt.n_taps) || !std::has_single_bit(opt.n_fft))
        throw std::invalid_argument("OfdmOptions: n_fft must be a power of two no shorter than n_taps");

    std::vector<cdouble> coeffs(spec.trials * opt.n_fft);
    parallel_for(spec.trials, threads, [&](std::size_t i) {
        TapVector tv;
        if (opt.source == TapSource::IidGaussian)
        {
            auto engine = make_engine(derive_seed(spec.seed, i));
            std::normal_distribution<double> normal(0.0, std::sqrt(0.5 / opt.n_taps));
            tv = {std::vector<cdouble>(static_cast<std::size_t>(opt.n_taps)), spec.pulse.symbol_period()};
            for (auto &t : tv.taps)
            {
                const double re = normal(engine);
                t = {re, normal(engine)};
            }
        }
        else
        {
            const auto profile = trial_profile(spec, i);
            const double tau = best_offset(profile, spec.pulse,
                                           SearchGrid::covering(profile, spec.pulse, spec.grid_divisions));
            tv = extract_generalized_taps(profile, spec.pulse, tau, opt.n_taps);
        }
        const auto r = to_frequency_domain(tv, opt.n_fft);
        std::copy(r.coefficients.begin(), r.coefficients.end(),
                  coeffs.begin() + static_cast<std::ptrdiff_t>(i * opt.n_fft));
    });
    return coeffs;
}

/// Dip and deep-fade statistics of every subcarrier coefficient across trials.
inline std::vector<SubcarrierStats> subcarrier_fade_stats(const CampaignSpec &spec, const OfdmOptions &opt,
                                                          unsigned threads = 1)
{
    const auto coeffs = subcarrier_realizations(spec, opt, threads);
    const double baseline = rayleigh_baseline_deep_fade(spec.epsilon);
    std::vector<SubcarrierStats> out;
    out.reserve(opt.n_fft);
    std::vector<cdouble> column(spec.trials);
    for (std::size_t k = 0; k < opt.n_fft; ++k)
    {
        for (std::size_t i = 0; i < spec.trials; ++i)
            column[i] = coeffs[i * opt.n_fft + k];
        const auto x = real_part_samples(column, spec.normalize_g);
        const auto pdf = symmetric_histogram(x, spec.histogram_bins);
        const auto p = powers(column);
        out.push_back({k, analyze_dip(pdf), deep_fade_fraction(p, spec.epsilon), baseline,
                       binomial_standard_error(baseline, spec.trials)});
    }
    return out;
}

} // namespace mediumband
