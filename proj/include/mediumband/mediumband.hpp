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

#include "artifacts.hpp"
#include "campaign.hpp"
#include "channel.hpp"
#include "json_io.hpp"
#include "ofdm.hpp"
#include "parallel.hpp"
#include "planner.hpp"
#include "pulse.hpp"
#include "reflector.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "sync.hpp"

namespace mediumband {

inline constexpr const char *kVersion = "0.1.0";

} // namespace mediumband
