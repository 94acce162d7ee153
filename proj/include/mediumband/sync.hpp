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
#include "pulse.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mediumband {

/// Candidate timing offsets for the synchroniser, in seconds, ascending.
class SearchGrid
{
  public:
    SearchGrid() = default;
    explicit SearchGrid(std::vector<double> points) : points_(std::move(points)) {}

    /// start, start + step, ... up to stop; stop itself is always included.
    static SearchGrid uniform(double start, double stop, double step)
    {
        if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop))
            throw std::invalid_argument("SearchGrid: step must be positive and bounds finite");
        std::vector<double> pts;
        if (stop < start)
            return SearchGrid(std::move(pts));
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        pts.reserve(n + 2);
        for (std::size_t k = 0; k <= n; ++k)
            pts.push_back(start + static_cast<double>(k) * step);
        if (stop - pts.back() > 1e-9 * step)
            pts.push_back(stop);
        else
            pts.back() = stop;
        return SearchGrid(std::move(pts));
    }

    /// [0, max excess delay] at T_s / divisions.
    static SearchGrid covering(const DelayProfile &profile, const PulseShape &pulse, int divisions = 128)
    {
        return uniform(0.0, max_excess_delay(profile), pulse.symbol_period() / divisions);
    }

    const std::vector<double> &points() const noexcept { return points_; }
    bool empty() const noexcept { return points_.empty(); }

  private:
    std::vector<double> points_;
};

struct IsiTap
{
    int lag = 0;
    cdouble value{};
};

/// Desired fading factor and residual symbol-spaced interference at one timing offset.
struct SyncResult
{
    double tau_hat = 0.0;
    cdouble g{};
    std::vector<IsiTap> isi_taps;
    double sir_db = std::numeric_limits<double>::infinity();

    double isi_power() const noexcept
    {
        double p = 0.0;
        for (const auto &t : isi_taps)
            p += std::norm(t.value);
        return p;
    }
};

// Lag-0 taps below this fraction of |g| are treated as zero.
inline constexpr double kIsiFloor = 1e-6;

/// h_lag = sum_n gain_n * p(tau_hat + lag T_s - delay_n).
inline cdouble effective_tap(const DelayProfile &profile, const PulseShape &pulse, double tau_hat, int lag)
{
    const double ts = pulse.symbol_period();
    const double at = tau_hat / ts + static_cast<double>(lag);
    cdouble h{};
    for (const auto &c : profile)
        h += c.gain * pulse.normalized(at - c.delay / ts);
    return h;
}

/// Lags examined on each side of the desired tap: ceil(2 T_m / T_s) + 4.
inline int isi_window(const DelayProfile &profile, const PulseShape &pulse)
{
    return static_cast<int>(std::ceil(2.0 * max_excess_delay(profile) / pulse.symbol_period())) + 4;
}

inline SyncResult decompose(const DelayProfile &profile, const PulseShape &pulse, double tau_hat)
{
    if (!std::isfinite(tau_hat))
        throw std::invalid_argument("decompose: tau_hat must be finite");
    SyncResult r;
    r.tau_hat = tau_hat;
    r.g = effective_tap(profile, pulse, tau_hat, 0);
    const double floor = kIsiFloor * std::abs(r.g);
    const int window = isi_window(profile, pulse);
    for (int lag = -window; lag <= window; ++lag)
    {
        if (lag == 0)
            continue;
        const cdouble h = effective_tap(profile, pulse, tau_hat, lag);
        if (std::abs(h) >= floor && std::abs(h) > 0.0)
            r.isi_taps.push_back({lag, h});
    }
    const double isi = r.isi_power();
    r.sir_db = isi > 0.0 ? 10.0 * std::log10(std::norm(r.g) / isi) : std::numeric_limits<double>::infinity();
    return r;
}

/// Timing offset maximising |g| over the grid; the earliest offset wins ties.
inline double best_offset(const DelayProfile &profile, const PulseShape &pulse, const SearchGrid &grid)
{
    if (grid.empty())
        throw std::invalid_argument("synchronize: search grid is empty");
    double best_tau = grid.points().front();
    double best_mag = -1.0;
    for (const double tau : grid.points())
    {
        const double mag = std::norm(effective_tap(profile, pulse, tau, 0));
        if (mag > best_mag)
        {
            best_mag = mag;
            best_tau = tau;
        }
    }
    return best_tau;
}

inline SyncResult synchronize(const DelayProfile &profile, const PulseShape &pulse, const SearchGrid &grid)
{
    return decompose(profile, pulse, best_offset(profile, pulse, grid));
}

inline SyncResult synchronize(const DelayProfile &profile, const PulseShape &pulse)
{
    return synchronize(profile, pulse, SearchGrid::covering(profile, pulse));
}

} // namespace mediumband
