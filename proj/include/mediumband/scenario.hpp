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

#include "mediumband.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace mediumband {

// Process exit codes of the scenario runner.
enum ExitCode : int
{
    kExitOk = 0,
    kExitFailure = 1,
    kExitSchema = 2,
    kExitInfeasible = 3
};

struct RunOptions
{
    unsigned threads = 1;
    // Relative file references inside a scenario resolve against this directory.
    std::filesystem::path base_dir = ".";
    // Overrides the scenario's output_dir when non-empty.
    std::filesystem::path output_dir;
};

struct RunOutcome
{
    int exit_code = kExitOk;
    std::string summary; // human-readable, one or more lines
    json report;         // machine-readable summary, or the error document
    std::vector<std::filesystem::path> artifacts;
};

namespace detail {

// Six significant digits, for human-readable summaries only.
inline std::string brief(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline std::string percent(double v) { return brief(v) + '%'; }

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

inline json load_json_file(const std::filesystem::path &file, const std::string &path)
{
    std::ifstream in(file);
    if (!in)
        throw SchemaError(path, "cannot open file '" + file.string() + "'");
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw SchemaError(path, std::string("invalid JSON in '") + file.string() + "': " + e.what());
    }
}

/// Inline object under `key`, or a file named by `key_file`.
inline json inline_or_file(const json &params, const std::string &key, const std::filesystem::path &base_dir,
                           const std::string &path)
{
    if (params.contains(key))
        return params.at(key);
    const std::string file_key = key + "_file";
    if (params.contains(file_key))
    {
        const auto &f = params.at(file_key);
        if (!f.is_string())
            throw SchemaError(path + "/" + file_key, "expected a file path string");
        std::filesystem::path p = f.get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        return load_json_file(p, path + "/" + file_key);
    }
    throw SchemaError(path + "/" + key, "missing required field (inline object or " + file_key + ")");
}

struct ParsedScenario
{
    std::string name;
    std::string mode;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir;
    json parameters;
};

inline ParsedScenario parse_scenario(const json &doc)
{
    if (!doc.is_object())
        throw SchemaError("", "scenario must be a JSON object");
    ParsedScenario s;
    s.name = schema::string(doc, "name", "");
    s.mode = schema::string(doc, "mode", "");
    static const char *modes[] = {"classify", "plan", "campaign", "reflectors", "ofdm", "ber"};
    if (std::find(std::begin(modes), std::end(modes), s.mode) == std::end(modes))
        throw SchemaError("/mode", "unknown mode '" + s.mode + "'");
    s.seed = schema::count_or(doc, "seed", 1, "");
    if (doc.contains("output_dir"))
        s.output_dir = schema::string(doc, "output_dir", "");
    s.parameters = schema::field(doc, "parameters", "");
    if (!s.parameters.is_object())
        throw SchemaError("/parameters", "expected an object");
    return s;
}

template <class Fn>
auto guarded(const std::string &path, Fn &&fn)
{
    try
    {
        return fn();
    }
    catch (const std::invalid_argument &e)
    {
        throw SchemaError(path, e.what());
    }
}

inline CampaignSpec campaign_from(const json &p, std::uint64_t seed)
{
    const std::string path = "/parameters";
    return guarded(path, [&] {
        CampaignSpec spec;
        spec.profile.t_m = schema::number(p, "t_m_s", path);
        spec.profile.n_paths = schema::count_or(p, "n_paths", 8, path);
        // null (as echoed in manifests) and absence both mean a uniform envelope.
        if (p.contains("decay_s") && !p.at("decay_s").is_null())
            spec.profile.decay = schema::number(p, "decay_s", path);
        spec.pulse = PulseShape(schema::number(p, "t_s_s", path), schema::number_or(p, "rolloff", 0.25, path));
        spec.trials = schema::count(schema::field(p, "trials", path), path + "/trials");
        spec.seed = seed;
        spec.histogram_bins = schema::count_or(p, "histogram_bins", kDefaultHistogramBins, path);
        spec.normalize_g = schema::boolean_or(p, "normalize_g", true, path);
        spec.epsilon = schema::number_or(p, "epsilon", kDefaultDeepFadeThreshold, path);
        spec.grid_divisions = static_cast<int>(schema::count_or(p, "grid_divisions", 128, path));
        spec.validate();
        return spec;
    });
}

inline json campaign_echo(const CampaignSpec &spec)
{
    return {{"t_m_s", spec.profile.t_m},
            {"t_s_s", spec.pulse.symbol_period()},
            {"n_paths", spec.profile.n_paths},
            {"decay_s", std::isinf(spec.profile.decay) ? json(nullptr) : json(spec.profile.decay)},
            {"rolloff", spec.pulse.rolloff()},
            {"trials", spec.trials},
            {"histogram_bins", spec.histogram_bins},
            {"normalize_g", spec.normalize_g},
            {"epsilon", spec.epsilon},
            {"grid_divisions", spec.grid_divisions}};
}

class ArtifactSink
{
  public:
    explicit ArtifactSink(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void write(const std::string &name, std::string_view content)
    {
        const auto path = dir_ / name;
        write_atomically(path, content);
        written_.push_back(path);
    }

    const std::vector<std::filesystem::path> &written() const noexcept { return written_; }
    bool enabled() const noexcept { return !dir_.empty(); }

  private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
};

inline const std::vector<double> &fade_epsilons()
{
    static const std::vector<double> eps = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
    return eps;
}

} // namespace detail

/// Executes one scenario document and writes its artifacts.
///
/// The document is {"name", "mode", "seed", "output_dir", "parameters"}; a
/// run manifest (which embeds the resolved scenario under "scenario") is
/// accepted too, so any run can be repeated from its manifest alone.
inline RunOutcome run_scenario(const json &document, const RunOptions &options = {})
{
    RunOutcome out;
    try
    {
        const json &doc = document.contains("scenario") ? document.at("scenario") : document;
        auto s = detail::parse_scenario(doc);
        const auto &p = s.parameters;
        const std::string pp = "/parameters";
        const auto out_dir = !options.output_dir.empty() ? options.output_dir : s.output_dir;
        detail::ArtifactSink sink(out_dir);

        // Resolved copy of the scenario: every default filled in and file
        // references inlined, so the manifest alone reproduces the run.
        json resolved = {{"name", s.name}, {"mode", s.mode}, {"seed", s.seed}, {"parameters", json::object()}};
        if (!s.output_dir.empty())
            resolved["output_dir"] = s.output_dir.string();
        json &rp = resolved["parameters"];

        if (s.mode == "classify")
        {
            const SystemPoint point = detail::guarded(pp, [&] {
                SystemPoint sp{schema::number(p, "t_m_s", pp), schema::number(p, "t_s_s", pp),
                               schema::number_or(p, "lambda", kDefaultLambda, pp)};
                sp.validate();
                return sp;
            });
            rp = {{"t_m_s", point.t_m}, {"t_s_s", point.t_s}, {"lambda", point.lambda}};
            const auto band = classify(point);
            const double v = pds(point);
            out.summary = std::string(to_string(band)) + ", PDS=" + detail::percent(v);
            out.report = {{"class", to_string(band)}, {"pds", v}};
        }
        else if (s.mode == "plan")
        {
            const DesignRequest req{schema::number(p, "t_m_s", pp), schema::number(p, "target_pds", pp),
                                    schema::number_or(p, "lambda", kDefaultLambda, pp)};
            const auto r = detail::guarded(pp, [&] { return choose_symbol_period(req); });
            rp = {{"t_m_s", req.t_m_estimate}, {"target_pds", req.target_pds}, {"lambda", req.lambda}};
            out.summary = "T_s=" + detail::brief(r.t_s) + " s, " + std::string(to_string(r.band)) +
                          ", PDS=" + detail::percent(pds(r.point));
            if (r.warning)
                out.summary += "\nwarning: " + r.note;
            out.report = {{"t_s_s", r.t_s}, {"class", to_string(r.band)}, {"pds", pds(r.point)}, {"warning", r.warning}};
            if (r.warning)
                out.report["note"] = r.note;
        }
        else if (s.mode == "campaign")
        {
            const auto spec = detail::campaign_from(p, s.seed);
            rp = detail::campaign_echo(spec);
            const auto res = run_campaign(spec, options.threads);

            CsvWriter pdf({"bin_center", "density"});
            for (std::size_t i = 0; i < res.pdf.bins(); ++i)
                pdf.row({res.pdf.bin_center(i), res.pdf.densities[i]});
            CsvWriter fades({"epsilon", "empirical", "rayleigh_baseline"});
            for (const auto &row : deep_fade_table(res.g, detail::fade_epsilons()))
                fades.row({row.epsilon, row.empirical, row.rayleigh_baseline});
            sink.write("pdf.csv", pdf.str());
            sink.write("fades.csv", fades.str());

            const auto point = spec.point();
            out.report = {{"class", to_string(classify(point))},
                          {"pds", pds(point)},
                          {"is_bimodal", res.dip.is_bimodal},
                          {"dip_depth", res.dip.dip_depth},
                          {"dip_width", res.dip.dip_width},
                          {"density_at_zero", res.dip.density_at_zero},
                          {"peak_density", res.dip.peak_density},
                          {"deep_fade_prob", res.deep_fade_prob},
                          {"rayleigh_baseline", res.rayleigh_baseline},
                          {"standard_error", res.standard_error},
                          {"sample_variance", res.sample_variance},
                          {"median_sir_db", res.median_sir_db},
                          {"warnings", res.warnings}};
            std::ostringstream os;
            os << to_string(classify(point)) << ", PDS=" << detail::percent(pds(point)) << ", trials=" << spec.trials
               << "\nbimodal=" << (res.dip.is_bimodal ? "yes" : "no") << " dip_depth=" << res.dip.dip_depth
               << "\ndeep fade P(|g|^2/E|g|^2 < " << spec.epsilon << ") = " << res.deep_fade_prob
               << " (Rayleigh " << res.rayleigh_baseline << ", SE " << res.standard_error << ")";
            for (const auto &w : res.warnings)
                os << "\nwarning: " << w;
            out.summary = os.str();
        }
        else if (s.mode == "ber")
        {
            const auto spec = detail::campaign_from(p, s.seed);
            const std::string mod = p.contains("modulation") ? schema::string(p, "modulation", pp) : "BPSK";
            Modulation m;
            if (mod == "BPSK")
                m = Modulation::Bpsk;
            else if (mod == "QPSK")
                m = Modulation::Qpsk;
            else
                throw SchemaError(pp + "/modulation", "expected BPSK or QPSK");
            const auto &snr_json = schema::array(p, "snr_db", pp);
            std::vector<double> snr;
            for (std::size_t i = 0; i < snr_json.size(); ++i)
                snr.push_back(schema::number(snr_json[i], pp + "/snr_db/" + std::to_string(i)));
            const auto symbols = schema::count_or(p, "symbols_per_trial", 10000, pp);
            const auto curve =
                detail::guarded(pp, [&] { return ber_simulation(spec, m, snr, symbols, options.threads); });
            rp = detail::campaign_echo(spec);
            rp["modulation"] = mod;
            rp["snr_db"] = snr;
            rp["symbols_per_trial"] = symbols;

            CsvWriter csv({"snr_db", "ber", "trials"});
            json rows = json::array();
            std::ostringstream os;
            os << mod << " over " << to_string(classify(spec.point())) << " channel, PDS="
               << detail::percent(pds(spec.point()));
            for (const auto &pt : curve)
            {
                csv.row({pt.snr_db, pt.ber, static_cast<double>(pt.trials)});
                rows.push_back({{"snr_db", pt.snr_db}, {"ber", pt.ber}, {"bit_errors", pt.bit_errors}, {"bits", pt.bits}});
                os << "\n  SNR " << pt.snr_db << " dB: BER " << pt.ber;
            }
            sink.write("ber.csv", csv.str());
            out.report = {{"curve", rows}};
            out.summary = os.str();
        }
        else if (s.mode == "ofdm")
        {
            const auto spec = detail::campaign_from(p, s.seed);
            OfdmOptions opt;
            opt.n_taps = static_cast<int>(schema::count_or(p, "n_taps", 2, pp));
            opt.n_fft = schema::count_or(p, "n_fft", 16, pp);
            const std::string source = p.contains("tap_source") ? schema::string(p, "tap_source", pp) : "profile";
            if (source == "profile")
                opt.source = TapSource::Profile;
            else if (source == "iid")
                opt.source = TapSource::IidGaussian;
            else
                throw SchemaError(pp + "/tap_source", "expected 'profile' or 'iid'");
            const auto stats = detail::guarded(pp, [&] { return subcarrier_fade_stats(spec, opt, options.threads); });
            rp = detail::campaign_echo(spec);
            rp["n_taps"] = opt.n_taps;
            rp["n_fft"] = opt.n_fft;
            rp["tap_source"] = source;

            CsvWriter csv({"subcarrier_index", "dip_depth", "deep_fade_prob", "baseline"});
            std::size_t below = 0;
            for (const auto &st : stats)
            {
                csv.row({static_cast<double>(st.index), st.dip.dip_depth, st.deep_fade_prob, st.baseline});
                below += st.baseline - st.deep_fade_prob > 3.0 * st.standard_error ? 1 : 0;
            }
            sink.write("subcarriers.csv", csv.str());
            out.report = {{"subcarriers", stats.size()}, {"below_baseline_3se", below}};
            out.summary = std::to_string(below) + " of " + std::to_string(stats.size()) +
                          " subcarriers fade less often than Rayleigh (by > 3 SE)";
        }
        else // reflectors
        {
            const json profile_doc = detail::inline_or_file(p, "base_profile", options.base_dir, pp);
            const auto base = profile_from_json(profile_doc, pp + "/base_profile");
            const json scene_doc = detail::inline_or_file(p, "scene", options.base_dir, pp);
            const auto scene = scene_from_json(scene_doc, pp + "/scene", &base, s.seed);
            const double t_s = schema::number(p, "t_s_s", pp);
            const double target = schema::number(p, "target_pds", pp);
            const double lambda = schema::number_or(p, "lambda", kDefaultLambda, pp);
            const auto sel = detail::guarded(pp, [&] { return select_reflectors(base, scene, t_s, target, lambda); });
            rp = {{"base_profile", to_json(base)},
                  {"scene", to_json(scene)},
                  {"t_s_s", t_s},
                  {"target_pds", target},
                  {"lambda", lambda}};

            json induced = json::array();
            for (const auto &m : sel.induced)
                induced.push_back({{"id", m.reflector_id},
                                   {"delay_s", m.delay},
                                   {"excess_delay_s", m.delay - scene.direct_delay()},
                                   {"gain_re", m.gain.real()},
                                   {"gain_im", m.gain.imag()}});
            const auto base_point = SystemPoint{max_excess_delay(base), t_s, lambda};
            out.report = {{"feasible", sel.feasible},
                          {"active_ids", sel.active_ids},
                          {"induced", induced},
                          {"base_class", to_string(classify(base_point))},
                          {"base_pds", pds(base_point)},
                          {"class", to_string(classify(sel.point))},
                          {"pds", sel.achieved_pds},
                          {"t_m_s", sel.point.t_m}};
            if (sel.feasible)
            {
                sink.write("selection.json", out.report.dump(2) + "\n");
                sink.write("profile.json", to_json(sel.new_profile).dump(2) + "\n");
                out.summary = std::to_string(sel.active_ids.size()) + " reflector(s) selected: " +
                              std::string(to_string(classify(base_point))) + " -> " +
                              std::string(to_string(classify(sel.point))) + ", PDS=" +
                              detail::percent(sel.achieved_pds);
            }
            else
            {
                out.exit_code = kExitInfeasible;
                out.report = {{"error", "infeasible"},
                              {"message", "annulus reflectors cannot reach the target PDS"},
                              {"target_pds", target},
                              {"best_achievable_pds", sel.achieved_pds},
                              {"best_selection", out.report}};
                sink.write("infeasible.json", out.report.dump(2) + "\n");
                out.summary = "infeasible: best achievable PDS=" + detail::percent(sel.achieved_pds) +
                              " < target " + detail::percent(target);
            }
        }

        if (sink.enabled())
        {
            const std::string canonical = resolved.dump();
            json manifest = {{"tool", "mediumband"},
                             {"version", kVersion},
                             {"scenario", resolved},
                             {"scenario_hash", "fnv1a64:" + detail::hex64(fnv1a64(canonical))},
                             {"seed", s.seed},
                             {"exit_code", out.exit_code}};
            json names = json::array();
            for (const auto &a : sink.written())
                names.push_back(a.filename().string());
            manifest["artifacts"] = names;
            manifest["report"] = out.report;
            sink.write("manifest.json", manifest.dump(2) + "\n");
        }
        out.artifacts = sink.written();
    }
    catch (const SchemaError &e)
    {
        out.exit_code = kExitSchema;
        out.report = {{"error", "schema"}, {"field", e.path()}, {"message", e.what()}};
        out.summary = std::string("schema error: ") + e.what();
    }
    catch (const std::exception &e)
    {
        out.exit_code = kExitFailure;
        out.report = {{"error", "runtime"}, {"message", e.what()}};
        out.summary = std::string("error: ") + e.what();
    }
    return out;
}

inline RunOutcome run_scenario_file(const std::filesystem::path &file, RunOptions options = {})
{
    try
    {
        const json doc = detail::load_json_file(file, "");
        if (options.base_dir == ".")
            options.base_dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
        return run_scenario(doc, options);
    }
    catch (const SchemaError &e)
    {
        RunOutcome out;
        out.exit_code = kExitSchema;
        out.report = {{"error", "schema"}, {"field", e.path()}, {"message", e.what()}};
        out.summary = std::string("schema error: ") + e.what();
        return out;
    }
}

} // namespace mediumband
