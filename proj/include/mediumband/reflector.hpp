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
#include "rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mediumband {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Position in meters. 2D scenes leave z at 0; every distance below is
/// dimension-agnostic, so the same delay test covers ellipses and ellipsoids.
using Point = std::array<double, 3>;

inline double distance(const Point &a, const Point &b) noexcept
{
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

/// Single-bounce propagation delay TX -> reflector -> RX.
inline double path_delay(const Point &tx, const Point &rx, const Point &reflector) noexcept
{
    return (distance(tx, reflector) + distance(reflector, rx)) / kSpeedOfLight;
}

struct Reflector
{
    std::string id;
    Point position{};
    cdouble gain{};
};

/// TX/RX pair with candidate reflectors and two confocal ellipses
/// (semi-major half-lengths a1 < a2) whose foci are TX and RX.
class ReflectorScene
{
  public:
    ReflectorScene(Point tx, Point rx, double a1, double a2, std::vector<Reflector> reflectors, int dims = 2)
        : tx_(tx), rx_(rx), a1_(a1), a2_(a2), dims_(dims), reflectors_(std::move(reflectors))
    {
        const double half_sep = distance(tx_, rx_) / 2.0;
        if (half_sep == 0.0)
            throw std::invalid_argument("ReflectorScene: tx and rx must differ");
        if (!(a1_ > half_sep))
            throw std::invalid_argument("ReflectorScene: a1 must exceed half the TX-RX separation");
        if (!(a2_ > a1_))
            throw std::invalid_argument("ReflectorScene: a2 must exceed a1");
        if (dims_ != 2 && dims_ != 3)
            throw std::invalid_argument("ReflectorScene: dims must be 2 or 3");
        std::set<std::string> seen;
        for (const auto &r : reflectors_)
            if (!seen.insert(r.id).second)
                throw std::invalid_argument("ReflectorScene: duplicate reflector id '" + r.id + "'");
    }

    const Point &tx() const noexcept { return tx_; }
    const Point &rx() const noexcept { return rx_; }
    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    int dims() const noexcept { return dims_; }
    const std::vector<Reflector> &reflectors() const noexcept { return reflectors_; }

    double direct_delay() const noexcept { return distance(tx_, rx_) / kSpeedOfLight; }
    double inner_delay() const noexcept { return 2.0 * a1_ / kSpeedOfLight; }
    double outer_delay() const noexcept { return 2.0 * a2_ / kSpeedOfLight; }

    const Reflector &find(const std::string &id) const
    {
        const auto it = std::find_if(reflectors_.begin(), reflectors_.end(), [&](const auto &r) { return r.id == id; });
        if (it == reflectors_.end())
            throw std::out_of_range("ReflectorScene: unknown reflector id '" + id + "'");
        return *it;
    }

    double delay_of(const std::string &id) const { return path_delay(tx_, rx_, find(id).position); }

  private:
    Point tx_, rx_;
    double a1_, a2_;
    int dims_;
    std::vector<Reflector> reflectors_;
};

/// True iff the single-bounce delay lies in [2 a1 / c, 2 a2 / c] (closed).
inline bool in_annulus(const ReflectorScene &scene, const std::string &id)
{
    const double d = scene.delay_of(id);
    return d >= scene.inner_delay() && d <= scene.outer_delay();
}

struct InducedMpc
{
    std::string reflector_id;
    double delay = 0.0; // absolute, seconds
    cdouble gain{};
};

/// One MPC per active reflector, in scene order; gains are used as given.
inline std::vector<InducedMpc> induce_mpcs(const ReflectorScene &scene, const std::set<std::string> &active_ids)
{
    for (const auto &id : active_ids)
        scene.find(id);
    std::vector<InducedMpc> out;
    for (const auto &r : scene.reflectors())
        if (active_ids.count(r.id))
            out.push_back({r.id, path_delay(scene.tx(), scene.rx(), r.position), r.gain});
    return out;
}

/// Induced MPCs expressed relative to the direct path, ready to merge into a profile.
inline std::vector<MultipathComponent> as_excess_components(const ReflectorScene &scene,
                                                            const std::vector<InducedMpc> &mpcs)
{
    std::vector<MultipathComponent> out;
    out.reserve(mpcs.size());
    for (const auto &m : mpcs)
        out.push_back({m.gain, std::max(0.0, m.delay - scene.direct_delay())});
    return out;
}

/// Drops every component that equals one of `induced` (gain and delay).
inline DelayProfile strip_components(const DelayProfile &profile, const std::vector<MultipathComponent> &induced)
{
    std::vector<MultipathComponent> kept;
    auto pending = induced;
    for (const auto &c : profile)
    {
        const auto it = std::find(pending.begin(), pending.end(), c);
        if (it != pending.end())
            pending.erase(it);
        else
            kept.push_back(c);
    }
    return DelayProfile(std::move(kept));
}

struct SelectionResult
{
    bool feasible = false;
    std::set<std::string> active_ids;
    std::vector<InducedMpc> induced;
    DelayProfile new_profile;
    SystemPoint point;
    // PDS reached by the returned profile; on infeasibility, the best achievable.
    double achieved_pds = 0.0;
};

/// Greedy real-time conversion: annulus reflectors are tried in order of
/// decreasing excess delay (ties by id) and added one at a time until the
/// profile reaches target_pds. The base profile's delays are relative to the
/// direct path.
inline SelectionResult select_reflectors(const DelayProfile &base, const ReflectorScene &scene, double t_s,
                                         double target_pds, double lambda = kDefaultLambda)
{
    if (!(t_s > 0.0))
        throw std::invalid_argument("select_reflectors: t_s must be positive");
    if (!(target_pds > 0.0))
        throw std::invalid_argument("select_reflectors: target_pds must be positive");

    struct Candidate
    {
        double excess;
        const Reflector *reflector;
    };
    std::vector<Candidate> candidates;
    for (const auto &r : scene.reflectors())
        if (in_annulus(scene, r.id))
            candidates.push_back({path_delay(scene.tx(), scene.rx(), r.position) - scene.direct_delay(), &r});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
        if (a.excess != b.excess)
            return a.excess > b.excess;
        return a.reflector->id < b.reflector->id;
    });

    SelectionResult out{false, {}, {}, base, {max_excess_delay(base), t_s, lambda}, 0.0};
    out.achieved_pds = pds(out.point);
    if (out.achieved_pds >= target_pds)
    {
        out.feasible = true;
        return out;
    }

    for (const auto &c : candidates)
    {
        out.active_ids.insert(c.reflector->id);
        out.induced = induce_mpcs(scene, out.active_ids);
        out.new_profile = base.with(as_excess_components(scene, out.induced));
        out.point = {max_excess_delay(out.new_profile), t_s, lambda};
        out.achieved_pds = pds(out.point);
        if (out.achieved_pds >= target_pds)
        {
            out.feasible = true;
            return out;
        }
    }
    return out;
}

/// Gain for a reflector with no configured link budget: magnitude
/// 0.5 x RMS of the base gains, uniform random phase.
inline cdouble default_reflection_gain(const DelayProfile &base, Engine &engine)
{
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double rms = std::sqrt(base.total_power() / static_cast<double>(base.size()));
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    return std::polar(0.5 * rms, phase(engine));
}

} // namespace mediumband
