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

#include <mediumband/channel.hpp>
#include <mediumband/sync.hpp>

#include <cmath>
#include <random>

using namespace mediumband;
using Catch::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

// Oracle: p(x) as the inverse Fourier transform of the raised-cosine
// spectrum (T = 1), by composite Simpson quadrature over [0, (1+beta)/2].
double raised_cosine_by_quadrature(double x, double beta)
{
    const auto spectrum = [beta](double f) {
        const double f1 = (1.0 - beta) / 2.0, f2 = (1.0 + beta) / 2.0;
        if (f <= f1)
            return 1.0;
        if (f >= f2)
            return 0.0;
        return 0.5 * (1.0 + std::cos(pi / beta * (f - f1)));
    };
    const double hi = (1.0 + beta) / 2.0;
    const int n = 20000;
    const double h = hi / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i)
    {
        const double f = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * spectrum(f) * std::cos(2.0 * pi * f * x);
    }
    return 2.0 * s * h / 3.0;
}

} // namespace

TEST_CASE("PulseShape - peak and Nyquist zeros")
{
    const PulseShape p(1e-6, 0.25);
    CHECK(p(0.0) == 1.0);
    for (int k = 1; k <= 20; ++k)
    {
        CHECK(p(k * 1e-6) == Approx(0.0).margin(1e-12));
        CHECK(p(-k * 1e-6) == Approx(0.0).margin(1e-12));
        CHECK(p.normalized(k) == 0.0);
    }
    CHECK_THROWS_AS(PulseShape(0.0), std::invalid_argument);
    CHECK_THROWS_AS(PulseShape(1e-6, 1.5), std::invalid_argument);
}

TEST_CASE("PulseShape - matches the spectral-domain oracle")
{
    for (const double beta : {0.1, 0.25, 0.5, 1.0})
    {
        const PulseShape p(1.0, beta);
        for (const double x : {0.05, 0.3, 0.5, 0.77, 1.5, 1.0 / (2.0 * beta), 2.2, 3.9})
            CHECK(p.normalized(x) == Approx(raised_cosine_by_quadrature(x, beta)).margin(1e-9));
    }
}

TEST_CASE("PulseShape - continuous across the removable singularity")
{
    const PulseShape p(1.0, 0.25);
    const double x0 = 2.0; // 1 / (2 beta)
    CHECK(p.normalized(x0) == Approx(p.normalized(x0 + 1e-7)).margin(1e-7));
    CHECK(p.normalized(x0) == Approx(p.normalized(x0 - 1e-7)).margin(1e-7));
}

TEST_CASE("effective_tap - worked examples")
{
    const PulseShape pulse(1e-6, 0.25);
    const DelayProfile single({{{1.0, 0.0}, 0.0}});
    CHECK(effective_tap(single, pulse, 0.0, 0) == cdouble(1.0, 0.0));
    CHECK(std::abs(effective_tap(single, pulse, 0.0, 1)) == 0.0);
    CHECK(std::abs(effective_tap(single, pulse, 0.0, -1)) == 0.0);

    const DelayProfile two({{{0.8, 0.0}, 0.0}, {{0.6, 0.0}, 0.5e-6}});
    const double expected = 0.8 + 0.6 * raised_cosine_by_quadrature(-0.5, 0.25);
    const cdouble h = effective_tap(two, pulse, 0.0, 0);
    CHECK(h.real() == Approx(expected).margin(1e-9));
    CHECK(h.imag() == 0.0);
}

TEST_CASE("effective_tap - linear in the gains")
{
    const PulseShape pulse(1e-6, 0.25);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto p = generate_nlos_profile({8, 0.6e-6}, seed);
        const cdouble alpha(g(rng), g(rng));
        for (int lag = -3; lag <= 3; ++lag)
        {
            const cdouble lhs = effective_tap(p.scaled(alpha), pulse, 0.2e-6, lag);
            const cdouble rhs = alpha * effective_tap(p, pulse, 0.2e-6, lag);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("SearchGrid - construction")
{
    const auto g = SearchGrid::uniform(0.0, 1.0, 0.25);
    REQUIRE(g.points().size() == 5);
    CHECK(g.points().back() == 1.0);
    const auto h = SearchGrid::uniform(0.0, 0.3, 1.0 / 128.0);
    CHECK(h.points().back() == 0.3);
    CHECK(SearchGrid::uniform(0.0, 0.0, 0.1).points().size() == 1);
    CHECK(SearchGrid::uniform(1.0, 0.0, 0.1).empty());
}

TEST_CASE("synchronize - single MPC at zero delay")
{
    const PulseShape pulse(1e-6);
    const auto r = synchronize(DelayProfile({{{1.0, 0.0}, 0.0}}), pulse);
    CHECK(r.tau_hat == 0.0);
    CHECK(r.g == cdouble(1.0, 0.0));
    CHECK(r.isi_taps.empty());
    CHECK(std::isinf(r.sir_db));
    CHECK(r.sir_db > 0.0);
}

TEST_CASE("synchronize - follows a delayed single path")
{
    const PulseShape pulse(1e-6);
    const DelayProfile p({{{1e-9, 0.0}, 0.0}, {{1.0, 0.0}, 0.3e-6}});
    const auto r = synchronize(p, pulse);
    CHECK(r.tau_hat == Approx(0.3e-6).margin(1e-6 / 256));
    CHECK(std::abs(r.g) == Approx(1.0).margin(1e-3));
}

TEST_CASE("synchronize - empty grid is rejected")
{
    const PulseShape pulse(1e-6);
    CHECK_THROWS_AS(synchronize(DelayProfile({{{1.0, 0.0}, 0.0}}), pulse, SearchGrid{}), std::invalid_argument);
}

TEST_CASE("synchronize - argmax against exhaustive scan")
{
    const PulseShape pulse(1e-6, 0.25);
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        const auto p = generate_nlos_profile({8, 0.6e-6}, seed);
        const auto grid = SearchGrid::covering(p, pulse);
        const auto r = synchronize(p, pulse, grid);
        double best = 0.0;
        for (const double tau : grid.points())
        {
            // Oracle: direct per-path summation.
            cdouble h{};
            for (const auto &c : p)
                h += c.gain * pulse(tau - c.delay);
            best = std::max(best, std::abs(h));
            CHECK(std::abs(r.g) >= std::abs(h) * (1.0 - 1e-12));
        }
        CHECK(std::abs(r.g) == Approx(best).epsilon(1e-12));
        CHECK(std::abs(r.g) >= std::abs(effective_tap(p, pulse, 0.0, 0)) * (1.0 - 1e-12));
    }
}

TEST_CASE("synchronize - ties go to the earliest offset")
{
    const PulseShape pulse(1.0, 0.25);
    // Offsets 0 and 1 both give |h| = 1.
    const DelayProfile p({{{1.0, 0.0}, 0.0}, {{1.0, 0.0}, 1.0}});
    const auto r = synchronize(p, pulse, SearchGrid({0.0, 1.0}));
    CHECK(r.tau_hat == 0.0);
}

TEST_CASE("synchronize - invariant under complex scaling")
{
    const PulseShape pulse(1e-6, 0.25);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto p = generate_nlos_profile({8, 0.6e-6}, seed);
        const auto a = synchronize(p, pulse);
        const auto b = synchronize(p.scaled({-0.3, 2.1}), pulse);
        CHECK(a.tau_hat == b.tau_hat);
        CHECK(a.sir_db == Approx(b.sir_db).margin(1e-9));
    }
}

TEST_CASE("synchronize - single path off grid loses at most the curvature bound")
{
    const double beta = 0.25;
    const PulseShape pulse(1.0, beta);
    const double step = 1.0 / 128.0;
    // 1 - p(x) <= C x^2 with C = pi^2/6 + pi^2 beta^2 / 2.
    const double c = pi * pi / 6.0 + pi * pi * beta * beta / 2.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    for (int i = 0; i < 100; ++i)
    {
        const double d = u(rng);
        const DelayProfile p({{{0.0, 0.0}, 0.0}, {{0.0, 1.0}, d}});
        const auto r = synchronize(p, pulse, SearchGrid::uniform(0.0, 1.0, step));
        CHECK(std::abs(r.g) <= 1.0 + 1e-12);
        CHECK(std::abs(r.g) >= 1.0 - c * (step / 2) * (step / 2));
    }
}

TEST_CASE("decompose - single MPC has no ISI")
{
    const PulseShape pulse(1e-6);
    const auto r = decompose(DelayProfile({{{0.0, 2.0}, 0.0}}), pulse, 0.0);
    CHECK(r.isi_taps.empty());
    CHECK(r.g == cdouble(0.0, 2.0));
    CHECK(std::isinf(r.sir_db));
}

TEST_CASE("decompose - narrowband leakage is negligible")
{
    // Per realisation the ratio blows up whenever g itself fades, so bound
    // the average leakage relative to the average tap power.
    const PulseShape pulse(1e-6, 0.25);
    double isi = 0.0, tap = 0.0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed)
    {
        const auto p = generate_nlos_profile({8, 1e-8}, seed);
        const auto r = synchronize(p, pulse);
        isi += r.isi_power();
        tap += std::norm(r.g);
    }
    CHECK(isi < 1e-3 * tap);
}

TEST_CASE("decompose - broadband two-tap profile leaks into neighbouring lags")
{
    const PulseShape pulse(1e-6, 0.25);
    const DelayProfile p({{{0.8, 0.0}, 0.0}, {{0.6, 0.3}, 1.2e-6}});
    const auto r = synchronize(p, pulse);
    REQUIRE_FALSE(r.isi_taps.empty());
    double strongest = 0.0;
    for (const auto &t : r.isi_taps)
    {
        CHECK(t.lag != 0);
        strongest = std::max(strongest, std::abs(t.value));
    }
    CHECK(strongest > 0.1);
    CHECK(std::isfinite(r.sir_db));
}

TEST_CASE("decompose - taps respect the window and floor")
{
    const PulseShape pulse(1e-6, 0.25);
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto p = generate_nlos_profile({8, 0.6e-6}, seed);
        const auto r = synchronize(p, pulse);
        const int window = isi_window(p, pulse);
        CHECK(window == 6);
        double isi = 0.0;
        for (const auto &t : r.isi_taps)
        {
            CHECK(std::abs(t.lag) <= window);
            CHECK(std::abs(t.value) >= kIsiFloor * std::abs(r.g));
            CHECK(t.value == effective_tap(p, pulse, r.tau_hat, t.lag));
            isi += std::norm(t.value);
        }
        CHECK(r.g == effective_tap(p, pulse, r.tau_hat, 0));
        CHECK(r.sir_db == Approx(10.0 * std::log10(std::norm(r.g) / isi)));
    }
}
