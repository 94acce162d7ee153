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
#include "reflector.hpp"
#include "rng.hpp"
#include "sync.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mediumband {

using json = nlohmann::json;

/// A document that does not match its schema; `path` is a JSON pointer to the offending field.
class SchemaError : public std::runtime_error
{
  public:
    SchemaError(std::string path, const std::string &message)
        : std::runtime_error(path + ": " + message), path_(std::move(path))
    {
    }
    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

namespace schema {

inline const json &field(const json &obj, const std::string &key, const std::string &path)
{
    if (!obj.is_object())
        throw SchemaError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(path + "/" + key, "missing required field");
    return *it;
}

inline double number(const json &v, const std::string &path)
{
    if (!v.is_number())
        throw SchemaError(path, "expected a number");
    return v.get<double>();
}

inline double number(const json &obj, const std::string &key, const std::string &path)
{
    return number(field(obj, key, path), path + "/" + key);
}

inline double number_or(const json &obj, const std::string &key, double fallback, const std::string &path)
{
    return obj.contains(key) ? number(obj, key, path) : fallback;
}

inline std::uint64_t count(const json &v, const std::string &path)
{
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw SchemaError(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::uint64_t count_or(const json &obj, const std::string &key, std::uint64_t fallback,
                              const std::string &path)
{
    return obj.contains(key) ? count(obj.at(key), path + "/" + key) : fallback;
}

inline std::string string(const json &obj, const std::string &key, const std::string &path)
{
    const auto &v = field(obj, key, path);
    if (!v.is_string())
        throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

inline bool boolean_or(const json &obj, const std::string &key, bool fallback, const std::string &path)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_boolean())
        throw SchemaError(path + "/" + key, "expected a boolean");
    return obj.at(key).get<bool>();
}

inline const json &array(const json &obj, const std::string &key, const std::string &path)
{
    const auto &v = field(obj, key, path);
    if (!v.is_array())
        throw SchemaError(path + "/" + key, "expected an array");
    return v;
}

} // namespace schema

// ---- DelayProfile ----------------------------------------------------------

inline json to_json(const DelayProfile &profile)
{
    json comps = json::array();
    for (const auto &c : profile)
        comps.push_back({{"re", c.gain.real()}, {"im", c.gain.imag()}, {"delay_s", c.delay}});
    return {{"components", comps}};
}

inline DelayProfile profile_from_json(const json &j, const std::string &path = "")
{
    const auto &arr = schema::array(j, "components", path);
    std::vector<MultipathComponent> comps;
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const std::string p = path + "/components/" + std::to_string(i);
        comps.push_back({{schema::number(arr[i], "re", p), schema::number(arr[i], "im", p)},
                         schema::number(arr[i], "delay_s", p)});
    }
    try
    {
        return DelayProfile(std::move(comps));
    }
    catch (const std::invalid_argument &e)
    {
        throw SchemaError(path + "/components", e.what());
    }
}

// ---- SyncResult ------------------------------------------------------------

inline json to_json(const SyncResult &r)
{
    json taps = json::array();
    for (const auto &t : r.isi_taps)
        taps.push_back({{"lag", t.lag}, {"re", t.value.real()}, {"im", t.value.imag()}});
    json out = {{"tau_hat_s", r.tau_hat}, {"g_re", r.g.real()}, {"g_im", r.g.imag()}, {"isi_taps", taps}};
    // JSON has no infinity: an ISI-free result carries null.
    out["sir_db"] = std::isfinite(r.sir_db) ? json(r.sir_db) : json(nullptr);
    return out;
}

inline SyncResult sync_result_from_json(const json &j, const std::string &path = "")
{
    SyncResult r;
    r.tau_hat = schema::number(j, "tau_hat_s", path);
    r.g = {schema::number(j, "g_re", path), schema::number(j, "g_im", path)};
    const auto &sir = schema::field(j, "sir_db", path);
    r.sir_db = sir.is_null() ? std::numeric_limits<double>::infinity() : schema::number(sir, path + "/sir_db");
    const auto &taps = schema::array(j, "isi_taps", path);
    for (std::size_t i = 0; i < taps.size(); ++i)
    {
        const std::string p = path + "/isi_taps/" + std::to_string(i);
        const auto &lag = schema::field(taps[i], "lag", p);
        if (!lag.is_number_integer())
            throw SchemaError(p + "/lag", "expected an integer");
        r.isi_taps.push_back({lag.get<int>(), {schema::number(taps[i], "re", p), schema::number(taps[i], "im", p)}});
    }
    return r;
}

// ---- ReflectorScene --------------------------------------------------------

inline json point_to_json(const Point &p, int dims)
{
    json a = json::array({p[0], p[1]});
    if (dims == 3)
        a.push_back(p[2]);
    return a;
}

inline Point point_from_json(const json &v, int &dims, const std::string &path)
{
    if (!v.is_array() || (v.size() != 2 && v.size() != 3))
        throw SchemaError(path, "expected a 2- or 3-element coordinate array");
    const int d = static_cast<int>(v.size());
    if (dims == 0)
        dims = d;
    else if (d != dims)
        throw SchemaError(path, "coordinate dimension differs from the scene's");
    Point p{};
    for (int i = 0; i < d; ++i)
        p[static_cast<std::size_t>(i)] = schema::number(v[static_cast<std::size_t>(i)], path + "/" + std::to_string(i));
    return p;
}

inline json to_json(const ReflectorScene &scene)
{
    json refl = json::array();
    for (const auto &r : scene.reflectors())
        refl.push_back({{"id", r.id},
                        {"pos", point_to_json(r.position, scene.dims())},
                        {"gain_re", r.gain.real()},
                        {"gain_im", r.gain.imag()}});
    return {{"tx", point_to_json(scene.tx(), scene.dims())},
            {"rx", point_to_json(scene.rx(), scene.dims())},
            {"a1_m", scene.a1()},
            {"a2_m", scene.a2()},
            {"reflectors", refl}};
}

/// Parses a scene. Reflectors without gain_re/gain_im take
/// default_reflection_gain(*base, ...) drawn in file order from `seed`;
/// without a base profile such reflectors are a schema error.
inline ReflectorScene scene_from_json(const json &j, const std::string &path = "",
                                      const DelayProfile *base = nullptr, std::uint64_t seed = 0)
{
    int dims = 0;
    const Point tx = point_from_json(schema::field(j, "tx", path), dims, path + "/tx");
    const Point rx = point_from_json(schema::field(j, "rx", path), dims, path + "/rx");
    const double a1 = schema::number(j, "a1_m", path);
    const double a2 = schema::number(j, "a2_m", path);
    auto engine = make_engine(derive_seed(seed, 0x5245464CULL));

    std::vector<Reflector> reflectors;
    const auto &arr = schema::array(j, "reflectors", path);
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const std::string p = path + "/reflectors/" + std::to_string(i);
        const auto &idv = schema::field(arr[i], "id", p);
        Reflector r;
        if (idv.is_string())
            r.id = idv.get<std::string>();
        else if (idv.is_number_integer())
            r.id = std::to_string(idv.get<std::int64_t>());
        else
            throw SchemaError(p + "/id", "expected a string or integer");
        r.position = point_from_json(schema::field(arr[i], "pos", p), dims, p + "/pos");
        const bool has_re = arr[i].contains("gain_re"), has_im = arr[i].contains("gain_im");
        if (has_re || has_im)
            r.gain = {schema::number_or(arr[i], "gain_re", 0.0, p), schema::number_or(arr[i], "gain_im", 0.0, p)};
        else if (base)
            r.gain = default_reflection_gain(*base, engine);
        else
            throw SchemaError(p + "/gain_re", "missing gain and no base profile to derive a default");
        reflectors.push_back(std::move(r));
    }
    try
    {
        return ReflectorScene(tx, rx, a1, a2, std::move(reflectors), dims);
    }
    catch (const std::invalid_argument &e)
    {
        throw SchemaError(path.empty() ? "/" : path, e.what());
    }
}

} // namespace mediumband
