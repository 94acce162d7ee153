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

#include <cmath>
#include <stdexcept>
#include <string>

namespace mediumband {

struct DesignRequest
{
    double t_m_estimate = 0.0;
    double target_pds = 0.0; // percent, (0, 100]
    double lambda = kDefaultLambda;

    void validate() const
    {
        if (!(t_m_estimate > 0.0) || !std::isfinite(t_m_estimate))
            throw std::invalid_argument("DesignRequest: t_m_estimate must be positive");
        if (!(target_pds > 0.0 && target_pds <= 100.0))
            throw std::invalid_argument("DesignRequest: target_pds must lie in (0, 100]");
        if (!(lambda > 1.0) || !std::isfinite(lambda))
            throw std::invalid_argument("DesignRequest: lambda must exceed 1");
    }
};

struct DesignResult
{
    double t_s = 0.0;
    SystemPoint point;
    BandClass band = BandClass::Narrowband;
    // Set when the chosen operating point is not mediumband.
    bool warning = false;
    std::string note;
};

/// Symbol period giving the requested percentage delay spread, t_s = 100 t_m / pds.
inline DesignResult choose_symbol_period(const DesignRequest &req)
{
    req.validate();
    DesignResult r;
    r.t_s = req.t_m_estimate * (100.0 / req.target_pds);
    r.point = {req.t_m_estimate, r.t_s, req.lambda};
    r.band = classify(r.point);
    if (r.band != BandClass::Mediumband)
    {
        r.warning = true;
        r.note = "target PDS places the link in the " + std::string(to_string(r.band)) + " region";
    }
    return r;
}

} // namespace mediumband
