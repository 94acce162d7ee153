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

#include <cmath>
#include <stdexcept>

namespace mediumband {

enum class PulseKind
{
    RaisedCosineAutocorrelation
};

/// Overall transmit/receive pulse autocorrelation p(t), peak-normalised.
///
/// Raised cosine with roll-off beta: p(t) = sinc(t/T) cos(pi beta t/T) / (1 - (2 beta t/T)^2).
/// p(0) = 1 and p(kT) = 0 for every nonzero integer k.
class PulseShape
{
  public:
    explicit PulseShape(double symbol_period, double rolloff = 0.25)
        : symbol_period_(symbol_period), rolloff_(rolloff)
    {
        if (!(symbol_period > 0.0) || !std::isfinite(symbol_period))
            throw std::invalid_argument("PulseShape: symbol period must be positive");
        if (!(rolloff >= 0.0 && rolloff <= 1.0))
            throw std::invalid_argument("PulseShape: roll-off must lie in [0, 1]");
    }

    PulseKind kind() const noexcept { return PulseKind::RaisedCosineAutocorrelation; }
    double symbol_period() const noexcept { return symbol_period_; }
    double rolloff() const noexcept { return rolloff_; }

    double operator()(double t) const noexcept { return normalized(t / symbol_period_); }

    /// p at time x symbol periods.
    double normalized(double x) const noexcept
    {
        constexpr double pi = 3.14159265358979323846264338327950;
        if (x == 0.0)
            return 1.0;
        // Exact Nyquist zeros; sin(pi k) is not exactly zero in floating point.
        if (x == std::nearbyint(x))
            return 0.0;
        const double sinc = std::sin(pi * x) / (pi * x);
        const double bx = 2.0 * rolloff_ * x;
        const double den = 1.0 - bx * bx;
        if (std::abs(den) < 1e-10)
        {
            // Removable singularity at |x| = 1 / (2 beta).
            const double x0 = 1.0 / (2.0 * rolloff_);
            return (pi / 4.0) * std::sin(pi * x0) / (pi * x0);
        }
        return sinc * std::cos(pi * rolloff_ * x) / den;
    }

  private:
    double symbol_period_;
    double rolloff_;
};

} // namespace mediumband
