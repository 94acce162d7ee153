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

#include <mediumband/planner.hpp>

#include <random>

using namespace mediumband;
using Catch::Approx;

TEST_CASE("choose_symbol_period - worked examples")
{
    const auto a = choose_symbol_period({1e-6, 40.0});
    CHECK(a.t_s == Approx(2.5e-6).epsilon(1e-12));
    CHECK(a.band == BandClass::Mediumband);
    CHECK_FALSE(a.warning);

    const auto b = choose_symbol_period({1e-6, 60.0});
    CHECK(b.t_s == Approx(1.67e-6).epsilon(0.005));
    CHECK(b.band == BandClass::Mediumband);

    const auto c = choose_symbol_period({1e-6, 100.0});
    CHECK(c.t_s == 1e-6);
    CHECK(c.band == BandClass::Broadband);
    CHECK(c.warning);
}

TEST_CASE("choose_symbol_period - narrowband targets warn instead of failing")
{
    const auto r = choose_symbol_period({1e-6, 10.0});
    CHECK(r.band == BandClass::Narrowband);
    CHECK(r.warning);
    CHECK_FALSE(r.note.empty());
    CHECK(choose_symbol_period({1e-6, 5.0}).band == BandClass::Narrowband);
}

TEST_CASE("choose_symbol_period - invalid requests")
{
    CHECK_THROWS_AS(choose_symbol_period({0.0, 40.0}), std::invalid_argument);
    CHECK_THROWS_AS(choose_symbol_period({1e-6, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(choose_symbol_period({1e-6, 100.5}), std::invalid_argument);
    CHECK_THROWS_AS(choose_symbol_period({1e-6, 40.0, 0.5}), std::invalid_argument);
}

TEST_CASE("choose_symbol_period - round trip and monotonicity")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> tm(1e-9, 1e-5), target(0.01, 100.0);
    for (int i = 0; i < 2000; ++i)
    {
        const DesignRequest req{tm(rng), target(rng)};
        const auto r = choose_symbol_period(req);
        CHECK(pds(r.point) == Approx(req.target_pds).epsilon(1e-12));
        CHECK(r.band == classify(r.point));

        DesignRequest bigger = req;
        bigger.target_pds = std::min(100.0, req.target_pds * 1.01);
        if (bigger.target_pds > req.target_pds)
            CHECK(choose_symbol_period(bigger).t_s < r.t_s);
    }
}
