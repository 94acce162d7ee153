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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace mediumband {

/// Shortest round-trip decimal for a double; "inf"/"-inf"/"nan" otherwise.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Writes `content` to a sibling temp file then renames it over `path`, so
/// readers see either the old file or the complete new one.
inline void write_atomically(const std::filesystem::path &path, std::string_view content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    long pid = 0;
#if defined(__unix__) || defined(__APPLE__)
    pid = static_cast<long>(::getpid());
#endif
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(pid);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
        {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

/// Minimal CSV builder: numbers in shortest round-trip form, '\n' line ends.
class CsvWriter
{
  public:
    explicit CsvWriter(std::initializer_list<std::string_view> header)
    {
        bool first = true;
        for (const auto h : header)
        {
            if (!first)
                text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
        columns_ = header.size();
    }

    CsvWriter &row(std::initializer_list<double> values)
    {
        if (values.size() != columns_)
            throw std::invalid_argument("CsvWriter: row width differs from header");
        bool first = true;
        for (const double v : values)
        {
            if (!first)
                text_ += ',';
            text_ += format_number(v);
            first = false;
        }
        text_ += '\n';
        return *this;
    }

    const std::string &str() const noexcept { return text_; }
    void save(const std::filesystem::path &path) const { write_atomically(path, text_); }

  private:
    std::string text_;
    std::size_t columns_ = 0;
};

/// 64-bit FNV-1a, stable across platforms and runs.
constexpr std::uint64_t fnv1a64(std::string_view data) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace mediumband
