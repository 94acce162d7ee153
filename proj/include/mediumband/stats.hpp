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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace mediumband {

/// Binned density estimate over a symmetric support [-half_range, half_range].
struct PdfEstimate
{
    std::vector<double> bin_edges;
    std::vector<double> densities;
    std::vector<std::uint64_t> counts;
    std::uint64_t n_samples = 0;  // all samples offered
    std::uint64_t n_in_range = 0; // samples that landed in a bin

    std::size_t bins() const noexcept { return densities.size(); }
    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }

    double integral() const
    {
        double s = 0.0;
        for (std::size_t i = 0; i < bins(); ++i)
            s += densities[i] * bin_width(i);
        return s;
    }
};

inline PdfEstimate histogram_pdf(std::span<const double> samples, std::size_t bins, double half_range)
{
    if (bins == 0)
        throw std::invalid_argument("histogram_pdf: bins must be positive");
    if (!(half_range > 0.0) || !std::isfinite(half_range))
        throw std::invalid_argument("histogram_pdf: half range must be positive and finite");

    PdfEstimate pdf;
    pdf.bin_edges.resize(bins + 1);
    const double width = 2.0 * half_range / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i)
        pdf.bin_edges[i] = -half_range + static_cast<double>(i) * width;
    pdf.bin_edges.back() = half_range;
    pdf.counts.assign(bins, 0);
    pdf.n_samples = samples.size();

    for (const double x : samples)
    {
        if (!(x >= -half_range && x <= half_range))
            continue;
        auto idx = static_cast<std::size_t>((x + half_range) / width);
        idx = std::min(idx, bins - 1);
        ++pdf.counts[idx];
        ++pdf.n_in_range;
    }
    pdf.densities.assign(bins, 0.0);
    if (pdf.n_in_range > 0)
        for (std::size_t i = 0; i < bins; ++i)
            pdf.densities[i] = static_cast<double>(pdf.counts[i]) / (static_cast<double>(pdf.n_in_range) * width);
    return pdf;
}

/// Shape of the density around zero.
struct DipReport
{
    double density_at_zero = 0.0;
    double peak_density = 0.0;
    double dip_depth = 0.0;  // 1 - density_at_zero / peak_density, clamped to [0, 1]
    double dip_width = 0.0;  // distance between the two flanking modes; 0 unless bimodal
    bool is_bimodal = false;
};

// Flanking modes must clear the zero bin by this many Poisson standard errors.
inline constexpr double kBimodalSignificance = 3.0;

/// Reads the dip at zero off a histogram whose support is symmetric about 0.
///
/// Counts are smoothed with a 3-bin moving average. The density at zero is
/// the smoothed centre bin (odd bin count) or the mean of the two centre bins
/// (even). The flanking modes are the smoothed maxima strictly left and right
/// of zero; the histogram is bimodal when both exceed the zero value by more
/// than kBimodalSignificance standard errors.
inline DipReport analyze_dip(const PdfEstimate &pdf)
{
    const std::size_t n = pdf.bins();
    if (n < 3)
        throw std::invalid_argument("analyze_dip: at least 3 bins are required");

    std::vector<double> smooth(n), smooth_counts(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = std::min(n - 1, i + 1);
        double d = 0.0, c = 0.0;
        for (std::size_t j = lo; j <= hi; ++j)
        {
            d += pdf.densities[j];
            c += static_cast<double>(pdf.counts[j]);
        }
        const auto m = static_cast<double>(hi - lo + 1);
        smooth[i] = d / m;
        smooth_counts[i] = c / m;
    }

    DipReport r;
    std::size_t left_end, right_begin; // left side [0, left_end), right side [right_begin, n)
    double zero_count;
    if (n % 2 == 1)
    {
        const std::size_t mid = n / 2;
        r.density_at_zero = smooth[mid];
        zero_count = smooth_counts[mid];
        left_end = mid;
        right_begin = mid + 1;
    }
    else
    {
        const std::size_t hi = n / 2;
        r.density_at_zero = 0.5 * (smooth[hi - 1] + smooth[hi]);
        zero_count = 0.5 * (smooth_counts[hi - 1] + smooth_counts[hi]);
        left_end = hi - 1;
        right_begin = hi + 1;
    }
    r.peak_density = *std::max_element(smooth.begin(), smooth.end());
    if (r.peak_density > 0.0)
        r.dip_depth = std::clamp(1.0 - r.density_at_zero / r.peak_density, 0.0, 1.0);

    if (left_end == 0 || right_begin >= n)
        return r;
    const auto left = static_cast<std::size_t>(
        std::max_element(smooth_counts.begin(), smooth_counts.begin() + static_cast<std::ptrdiff_t>(left_end)) -
        smooth_counts.begin());
    const auto right = static_cast<std::size_t>(
        std::max_element(smooth_counts.begin() + static_cast<std::ptrdiff_t>(right_begin), smooth_counts.end()) -
        smooth_counts.begin());

    // A 3-bin mean of Poisson counts has variance ~ mean / 3.
    const auto clears = [&](double mode_count) {
        const double se = std::sqrt((mode_count + zero_count) / 3.0);
        return mode_count - zero_count > kBimodalSignificance * se;
    };
    r.is_bimodal = clears(smooth_counts[left]) && clears(smooth_counts[right]);
    if (r.is_bimodal)
        r.dip_width = pdf.bin_center(right) - pdf.bin_center(left);
    return r;
}

inline double q_function(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

inline double standard_normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// P(|g|^2 / E|g|^2 < epsilon) for a circularly-symmetric complex Gaussian g.
inline double rayleigh_baseline_deep_fade(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("rayleigh_baseline_deep_fade: epsilon must lie in (0, 1)");
    return -std::expm1(-epsilon);
}

/// Fraction of powers below epsilon times their sample mean.
inline double deep_fade_fraction(std::span<const double> powers, double epsilon)
{
    if (powers.empty())
        return 0.0;
    double mean = 0.0;
    for (const double p : powers)
        mean += p;
    mean /= static_cast<double>(powers.size());
    if (!(mean > 0.0))
        return 0.0;
    std::size_t below = 0;
    for (const double p : powers)
        below += p / mean < epsilon ? 1 : 0;
    return static_cast<double>(below) / static_cast<double>(powers.size());
}

inline double binomial_standard_error(double p, std::size_t n)
{
    return n == 0 ? std::numeric_limits<double>::infinity() : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct KsResult
{
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_survival(double lambda)
{
    if (lambda < 0.2)
        return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k)
    {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
        if (term < 1e-16)
            break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov test against N(0, 1); p-value uses
/// Stephens' finite-sample correction of the asymptotic distribution.
inline KsResult ks_test_standard_normal(std::span<const double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("ks_test_standard_normal: no samples");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double f = standard_normal_cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double sqrt_n = std::sqrt(n);
    return {d, kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * d)};
}

} // namespace mediumband
