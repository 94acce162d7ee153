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

#include <catch2/catch_amalgamated.hpp>

#include <mediumband/ofdm.hpp>

#include <cmath>
#include <random>

using namespace mediumband;
using Catch::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

// Oracle: the defining weighted sum, O(n^2).
std::vector<cdouble> naive_dft(const std::vector<cdouble> &taps, std::size_t n)
{
    std::vector<cdouble> out(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < taps.size(); ++l)
            out[k] += taps[l] * std::polar(1.0, -2.0 * pi * static_cast<double>(k * l % n) / static_cast<double>(n));
    return out;
}

double rel_error(const std::vector<cdouble> &a, const std::vector<cdouble> &b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
    {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

TapVector random_taps(std::mt19937_64 &rng, std::size_t n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    TapVector tv{std::vector<cdouble>(n), 1e-6};
    for (auto &t : tv.taps)
    {
        const double re = g(rng);
        t = {re, g(rng)};
    }
    return tv;
}

} // namespace

TEST_CASE("extract_generalized_taps")
{
    const PulseShape pulse(1e-6, 0.25);
    const DelayProfile single({{{0.3, -0.4}, 0.0}});
    const auto tv = extract_generalized_taps(single, pulse, 0.0, 4);
    REQUIRE(tv.taps.size() == 4);
    CHECK(tv.taps[0] == cdouble(0.3, -0.4));
    for (std::size_t l = 1; l < 4; ++l)
        CHECK(tv.taps[l] == cdouble(0.0, 0.0));
    CHECK(tv.t_s == 1e-6);

    // Two-tap broadband profile, T_m = 1.2 T_s.
    const DelayProfile fig({{{0.7, 0.1}, 0.0}, {{-0.2, 0.3}, 0.45e-6}, {{0.5, -0.5}, 1.2e-6}});
    const auto two = extract_generalized_taps(fig, pulse, synchronize(fig, pulse).tau_hat, 2);
    CHECK(std::abs(two.taps[0]) > 0.05);
    CHECK(std::abs(two.taps[1]) > 0.05);

    CHECK_THROWS_AS(extract_generalized_taps(single, pulse, 0.0, 0), std::invalid_argument);
}

TEST_CASE("extract_generalized_taps - matches per-lag summation")
{
    const PulseShape pulse(1e-6, 0.35);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto p = generate_nlos_profile({12, 1.3e-6}, seed);
        const double tau = 0.37e-6;
        const auto tv = extract_generalized_taps(p, pulse, tau, 3);
        for (int l = 0; l < 3; ++l)
        {
            cdouble h{};
            for (const auto &c : p)
                h += c.gain * pulse(tau + l * 1e-6 - c.delay);
            CHECK(std::abs(tv.taps[static_cast<std::size_t>(l)] - h) < 1e-12);
        }
    }
}

TEST_CASE("to_frequency_domain - worked examples")
{
    const auto flat = to_frequency_domain({{1.0}, 1e-6}, 8);
    CHECK(flat.n_fft == 8);
    for (const auto &c : flat.coefficients)
        CHECK(std::abs(c - cdouble(1.0, 0.0)) < 1e-15);

    const auto two = to_frequency_domain({{1.0, 1.0}, 1e-6}, 4);
    const std::vector<cdouble> expected{{2, 0}, {1, -1}, {0, 0}, {1, 1}};
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(two.coefficients[k] - expected[k]) < 1e-15);
}

TEST_CASE("to_frequency_domain - invalid sizes")
{
    CHECK_THROWS_AS(to_frequency_domain({{1.0, 2.0, 3.0}, 1e-6}, 2), std::invalid_argument);
    CHECK_THROWS_AS(to_frequency_domain({{1.0}, 1e-6}, 6), std::invalid_argument);
    CHECK_THROWS_AS(to_frequency_domain({{1.0}, 1e-6}, 0), std::invalid_argument);
    CHECK_THROWS_AS(to_frequency_domain({{}, 1e-6}, 4), std::invalid_argument);
}

TEST_CASE("to_frequency_domain - weighted sums, Parseval and round trip")
{
    std::mt19937_64 rng(7);
    for (std::size_t len = 1; len <= 8; ++len)
        for (std::size_t n = 8; n <= 256; n *= 2)
        {
            const auto tv = random_taps(rng, len);
            const auto r = to_frequency_domain(tv, n);
            CHECK(rel_error(r.coefficients, naive_dft(tv.taps, n)) < 1e-12);

            double freq = 0.0, time = 0.0;
            for (const auto &c : r.coefficients)
                freq += std::norm(c);
            for (const auto &t : tv.taps)
                time += std::norm(t);
            CHECK(freq == Approx(static_cast<double>(n) * time).epsilon(1e-12));

            const auto back = to_time_domain(r);
            auto padded = tv.taps;
            padded.resize(n);
            CHECK(rel_error(back, padded) < 1e-12);
        }
}

TEST_CASE("to_frequency_domain - linear")
{
    std::mt19937_64 rng(8);
    const auto a = random_taps(rng, 5), b = random_taps(rng, 5);
    const cdouble alpha(0.3, -1.2);
    TapVector sum{std::vector<cdouble>(5), 1e-6};
    for (std::size_t i = 0; i < 5; ++i)
        sum.taps[i] = alpha * a.taps[i] + b.taps[i];
    const auto fa = to_frequency_domain(a, 16), fb = to_frequency_domain(b, 16), fs = to_frequency_domain(sum, 16);
    std::vector<cdouble> combo(16);
    for (std::size_t k = 0; k < 16; ++k)
        combo[k] = alpha * fa.coefficients[k] + fb.coefficients[k];
    CHECK(rel_error(fs.coefficients, combo) < 1e-12);
}

TEST_CASE("to_frequency_domain - one nonzero tap gives a flat response")
{
    std::mt19937_64 rng(9);
    for (std::size_t pos = 0; pos < 8; ++pos)
    {
        TapVector tv{std::vector<cdouble>(8), 1e-6};
        tv.taps[pos] = {0.6, -0.8};
        for (const auto &c : to_frequency_domain(tv, 32).coefficients)
            CHECK(std::abs(c) == Approx(1.0).epsilon(1e-14));
    }
}

namespace {

CampaignSpec ofdm_spec(std::size_t n_paths, double t_m, std::size_t trials)
{
    CampaignSpec s;
    s.profile = {n_paths, t_m};
    s.pulse = PulseShape(1e-6, 0.25);
    s.trials = trials;
    s.seed = 21;
    return s;
}

} // namespace

TEST_CASE("subcarrier_fade_stats - i.i.d. Gaussian taps follow the Rayleigh baseline")
{
    const auto stats = subcarrier_fade_stats(ofdm_spec(8, 1.2e-6, 40000), {2, 4, TapSource::IidGaussian});
    REQUIRE(stats.size() == 4);
    for (const auto &s : stats)
    {
        CHECK(std::abs(s.deep_fade_prob - s.baseline) < 3.0 * s.standard_error);
        CHECK_FALSE(s.dip.is_bimodal);
    }
}

TEST_CASE("subcarrier_fade_stats - in-between MPCs avoid deep fades")
{
    const auto stats = subcarrier_fade_stats(ofdm_spec(16, 1.2e-6, 20000), {2, 8, TapSource::Profile});
    std::size_t below = 0;
    for (const auto &s : stats)
        below += s.baseline - s.deep_fade_prob > 3.0 * s.standard_error;
    CHECK(below > stats.size() / 2);
}

TEST_CASE("subcarrier_fade_stats - single path is flat and never fades")
{
    const auto spec = ofdm_spec(1, 1e-6, 500);
    const auto coeffs = subcarrier_realizations(spec, {2, 8, TapSource::Profile});
    for (std::size_t i = 0; i < spec.trials; ++i)
        for (std::size_t k = 0; k < 8; ++k)
            CHECK(std::abs(coeffs[i * 8 + k]) == Approx(1.0).epsilon(1e-12));
    for (const auto &s : subcarrier_fade_stats(spec, {2, 8, TapSource::Profile}))
        CHECK(s.deep_fade_prob == 0.0);
}

TEST_CASE("subcarrier_fade_stats - thread count does not change results")
{
    const auto spec = ofdm_spec(16, 1.2e-6, 600);
    CHECK(subcarrier_realizations(spec, {2, 8, TapSource::Profile}, 1) ==
          subcarrier_realizations(spec, {2, 8, TapSource::Profile}, 3));
}
