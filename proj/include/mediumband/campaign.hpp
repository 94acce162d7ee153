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

#include "channel.hpp"
#include "parallel.hpp"
#include "pulse.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "sync.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mediumband {

inline constexpr double kDefaultDeepFadeThreshold = 0.01;
inline constexpr std::size_t kDefaultHistogramBins = 81;
// Histogram support in units of the sample RMS.
inline constexpr double kHistogramSpan = 4.0;

struct CampaignSpec
{
    ProfileSpec profile;
    PulseShape pulse{1e-6};
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    std::size_t histogram_bins = kDefaultHistogramBins;
    bool normalize_g = true;
    double epsilon = kDefaultDeepFadeThreshold;
    int grid_divisions = 128;

    void validate() const
    {
        profile.validate();
        if (trials < 1)
            throw std::invalid_argument("CampaignSpec: trials must be at least 1");
        if (histogram_bins < 8)
            throw std::invalid_argument("CampaignSpec: histogram_bins must be at least 8");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("CampaignSpec: epsilon must lie in (0, 1)");
        if (grid_divisions < 64)
            throw std::invalid_argument("CampaignSpec: sync grid must resolve T_s/64 or finer");
    }

    SystemPoint point(double lambda = kDefaultLambda) const { return {profile.t_m, pulse.symbol_period(), lambda}; }
};

/// Channel realisation for one trial, synchronised at the argmax-|g| offset.
inline DelayProfile trial_profile(const CampaignSpec &spec, std::size_t trial)
{
    return generate_nlos_profile(spec.profile, derive_seed(spec.seed, trial));
}

inline SyncResult realize_trial(const CampaignSpec &spec, std::size_t trial)
{
    const auto profile = trial_profile(spec, trial);
    return synchronize(profile, spec.pulse, SearchGrid::covering(profile, spec.pulse, spec.grid_divisions));
}

/// Re(g) per realisation, rescaled to unit RMS when normalize is set.
inline std::vector<double> real_part_samples(std::span<const cdouble> g, bool normalize)
{
    std::vector<double> x(g.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        x[i] = g[i].real();
        sq += x[i] * x[i];
    }
    const double rms = g.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(g.size()));
    if (normalize && rms > 0.0)
        for (auto &v : x)
            v /= rms;
    return x;
}

inline std::vector<double> powers(std::span<const cdouble> g)
{
    std::vector<double> p(g.size());
    std::transform(g.begin(), g.end(), p.begin(), [](cdouble v) { return std::norm(v); });
    return p;
}

/// Histogram over [-span * RMS, span * RMS] plus the dip read-out.
inline PdfEstimate symmetric_histogram(std::span<const double> x, std::size_t bins)
{
    double sq = 0.0;
    for (const double v : x)
        sq += v * v;
    const double rms = x.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(x.size()));
    return histogram_pdf(x, bins, rms > 0.0 ? kHistogramSpan * rms : 1.0);
}

struct FadeRow
{
    double epsilon = 0.0;
    double empirical = 0.0;
    double rayleigh_baseline = 0.0;
};

inline std::vector<FadeRow> deep_fade_table(std::span<const cdouble> g, std::span<const double> epsilons)
{
    const auto p = powers(g);
    std::vector<FadeRow> rows;
    rows.reserve(epsilons.size());
    for (const double eps : epsilons)
        rows.push_back({eps, deep_fade_fraction(p, eps), rayleigh_baseline_deep_fade(eps)});
    return rows;
}

struct CampaignResult
{
    PdfEstimate pdf;
    DipReport dip;
    double deep_fade_prob = 0.0;
    double rayleigh_baseline = 0.0;
    double standard_error = 0.0; // binomial SE of deep_fade_prob under the Rayleigh null
    double mean_power = 0.0;     // mean |g|^2
    double sample_variance = 0.0; // of the histogrammed Re(g) values
    double median_sir_db = 0.0;
    std::vector<cdouble> g;
    std::vector<std::string> warnings;
};

inline CampaignResult run_campaign(const CampaignSpec &spec, unsigned threads = 1)
{
    spec.validate();
    CampaignResult out;
    if (spec.trials < 10 * spec.histogram_bins)
        out.warnings.push_back("trials (" + std::to_string(spec.trials) + ") are few for " +
                               std::to_string(spec.histogram_bins) + " histogram bins");

    out.g.resize(spec.trials);
    std::vector<double> sir(spec.trials);
    parallel_for(spec.trials, threads, [&](std::size_t i) {
        const auto r = realize_trial(spec, i);
        out.g[i] = r.g;
        sir[i] = r.sir_db;
    });

    const auto x = real_part_samples(out.g, spec.normalize_g);
    out.pdf = symmetric_histogram(x, spec.histogram_bins);
    out.dip = analyze_dip(out.pdf);

    double sq = 0.0;
    for (const double v : x)
        sq += v * v;
    out.sample_variance = sq / static_cast<double>(x.size());

    const auto p = powers(out.g);
    for (const double v : p)
        out.mean_power += v;
    out.mean_power /= static_cast<double>(p.size());
    out.deep_fade_prob = deep_fade_fraction(p, spec.epsilon);
    out.rayleigh_baseline = rayleigh_baseline_deep_fade(spec.epsilon);
    out.standard_error = binomial_standard_error(out.rayleigh_baseline, spec.trials);

    std::nth_element(sir.begin(), sir.begin() + static_cast<std::ptrdiff_t>(sir.size() / 2), sir.end());
    out.median_sir_db = sir[sir.size() / 2];
    return out;
}

enum class Modulation
{
    Bpsk,
    Qpsk
};

constexpr int bits_per_symbol(Modulation m) noexcept { return m == Modulation::Bpsk ? 1 : 2; }

struct BerPoint
{
    double snr_db = 0.0;
    double ber = 0.0;
    std::size_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
};

namespace detail {

struct SymbolBits
{
    cdouble symbol;
    unsigned bits;
};

inline SymbolBits draw_symbol(Modulation m, Engine &engine)
{
    const auto word = static_cast<unsigned>(engine() >> 62); // two fair bits
    if (m == Modulation::Bpsk)
    {
        const unsigned b = word & 1u;
        return {{b ? -1.0 : 1.0, 0.0}, b};
    }
    constexpr double a = 0.70710678118654752440;
    return {{(word & 1u) ? -a : a, (word & 2u) ? -a : a}, word};
}

inline unsigned detect(Modulation m, cdouble z)
{
    if (m == Modulation::Bpsk)
        return z.real() < 0.0 ? 1u : 0u;
    return (z.real() < 0.0 ? 1u : 0u) | (z.imag() < 0.0 ? 2u : 0u);
}

} // namespace detail

/// Uncoded BER through the symbol-spaced channel (g plus ISI taps) with
/// single-tap detection on g. SNR is E|g|^2 / N0 with unit symbol energy,
/// E|g|^2 taken over the campaign's realisations.
inline std::vector<BerPoint> ber_simulation(const CampaignSpec &spec, Modulation modulation,
                                            std::span<const double> snr_db_list, std::size_t symbols_per_trial,
                                            unsigned threads = 1)
{
    spec.validate();
    if (snr_db_list.empty())
        throw std::invalid_argument("ber_simulation: SNR list is empty");
    if (symbols_per_trial < 1000)
        throw std::invalid_argument("ber_simulation: symbols_per_trial must be at least 1000");

    std::vector<SyncResult> channels(spec.trials);
    parallel_for(spec.trials, threads, [&](std::size_t i) { channels[i] = realize_trial(spec, i); });

    double mean_power = 0.0;
    for (const auto &c : channels)
        mean_power += std::norm(c.g);
    mean_power /= static_cast<double>(channels.size());

    const std::size_t n_snr = snr_db_list.size();
    std::vector<std::uint64_t> errors(spec.trials * n_snr, 0);
    parallel_for(spec.trials, threads, [&](std::size_t i) {
        const auto &ch = channels[i];
        std::vector<IsiTap> taps = ch.isi_taps;
        taps.push_back({0, ch.g});
        int max_lag = 0;
        for (const auto &t : taps)
            max_lag = std::max(max_lag, std::abs(t.lag));
        const std::size_t pad = static_cast<std::size_t>(max_lag);
        const std::size_t total = symbols_per_trial + 2 * pad;
        const cdouble g_conj = std::conj(ch.g);

        std::vector<detail::SymbolBits> tx(total);
        for (std::size_t j = 0; j < n_snr; ++j)
        {
            auto engine = make_engine(derive_seed(derive_seed(spec.seed, i), 0x4E4F495345ULL + j));
            for (auto &s : tx)
                s = detail::draw_symbol(modulation, engine);
            const double n0 = mean_power / std::pow(10.0, snr_db_list[j] / 10.0);
            std::normal_distribution<double> noise(0.0, std::sqrt(n0 / 2.0));
            std::uint64_t errs = 0;
            for (std::size_t k = pad; k < pad + symbols_per_trial; ++k)
            {
                cdouble y{};
                for (const auto &t : taps)
                    y += t.value * tx[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) - t.lag)].symbol;
                y += cdouble(noise(engine), noise(engine));
                const unsigned diff = detail::detect(modulation, y * g_conj) ^ tx[k].bits;
                errs += static_cast<unsigned>(std::popcount(diff));
            }
            errors[i * n_snr + j] = errs;
        }
    });

    std::vector<BerPoint> out(n_snr);
    const std::uint64_t bits =
        static_cast<std::uint64_t>(spec.trials) * symbols_per_trial * static_cast<std::uint64_t>(bits_per_symbol(modulation));
    for (std::size_t j = 0; j < n_snr; ++j)
    {
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < spec.trials; ++i)
            e += errors[i * n_snr + j];
        out[j] = {snr_db_list[j], static_cast<double>(e) / static_cast<double>(bits), spec.trials, e, bits};
    }
    return out;
}

} // namespace mediumband
