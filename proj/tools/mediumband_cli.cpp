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

// Command-line front end: every subcommand is translated into a scenario
// document and executed by run_scenario, so flag runs and `run` agree.

#include <mediumband/scenario.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using mediumband::json;

struct CampaignFlags
{
    double t_m = 0.0;
    double t_s = 0.0;
    std::size_t paths = 8;
    std::size_t trials = 100000;
    std::size_t bins = mediumband::kDefaultHistogramBins;
    double rolloff = 0.25;
    std::optional<double> decay;
    bool raw = false;
    double epsilon = mediumband::kDefaultDeepFadeThreshold;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--tm", t_m, "maximum excess delay T_m [s]")->required();
        cmd->add_option("--ts", t_s, "symbol period T_s [s]")->required();
        cmd->add_option("--paths", paths, "multipath components per realisation")->capture_default_str();
        cmd->add_option("--trials", trials, "channel realisations")->capture_default_str();
        cmd->add_option("--bins", bins, "histogram bins")->capture_default_str();
        cmd->add_option("--rolloff", rolloff, "raised-cosine roll-off")->capture_default_str();
        cmd->add_option("--decay", decay, "exponential power-delay decay constant [s] (default: uniform)");
        cmd->add_flag("--raw", raw, "histogram Re(g) without unit-RMS normalisation");
        cmd->add_option("--epsilon", epsilon, "deep-fade threshold relative to mean power")->capture_default_str();
    }

    json parameters() const
    {
        json p = {{"t_m_s", t_m},   {"t_s_s", t_s},         {"n_paths", paths},
                  {"trials", trials}, {"histogram_bins", bins}, {"rolloff", rolloff},
                  {"normalize_g", !raw}, {"epsilon", epsilon}};
        if (decay)
            p["decay_s"] = *decay;
        return p;
    }
};

std::vector<double> parse_list(const std::string &text)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto end = text.find(',', start);
        const auto item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!item.empty())
            out.push_back(std::stod(item));
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mediumband: link-level simulator and design toolkit for mediumband channels"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_dir;
    bool as_json = false;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)")->capture_default_str();
    app.add_option("--out", out_dir, "artifact directory");
    app.add_flag("--json", as_json, "print the machine-readable report instead of the summary");

    double tm = 0.0, ts = 0.0, lambda = mediumband::kDefaultLambda, target = 0.0;

    auto *classify = app.add_subcommand("classify", "classify a (T_m, T_s) operating point");
    classify->add_option("--tm", tm, "delay spread T_m [s]")->required();
    classify->add_option("--ts", ts, "symbol period T_s [s]")->required();
    classify->add_option("--lambda", lambda, "narrowband ratio")->capture_default_str();

    auto *plan = app.add_subcommand("plan", "choose T_s for a target percentage delay spread");
    plan->add_option("--tm", tm, "estimated delay spread T_m [s]")->required();
    plan->add_option("--pds", target, "target PDS in percent")->required();
    plan->add_option("--lambda", lambda, "narrowband ratio")->capture_default_str();

    CampaignFlags cflags;
    auto *campaign = app.add_subcommand("campaign", "Monte Carlo fading-factor campaign");
    cflags.attach(campaign);

    auto *ber = app.add_subcommand("ber", "uncoded BER over synchronised channels");
    cflags.attach(ber);
    std::string modulation = "BPSK", snr_text = "0,5,10,15,20";
    std::size_t symbols = 10000;
    ber->add_option("--modulation", modulation, "BPSK or QPSK")->capture_default_str();
    ber->add_option("--snr", snr_text, "comma-separated SNR list [dB]")->capture_default_str();
    ber->add_option("--symbols", symbols, "symbols per realisation")->capture_default_str();

    auto *ofdm = app.add_subcommand("ofdm", "per-subcarrier deep-fade statistics");
    cflags.attach(ofdm);
    int n_taps = 2;
    std::size_t n_fft = 16;
    bool iid = false;
    ofdm->add_option("--taps", n_taps, "time-domain taps")->capture_default_str();
    ofdm->add_option("--nfft", n_fft, "subcarriers (power of two)")->capture_default_str();
    ofdm->add_flag("--iid", iid, "i.i.d. Gaussian taps instead of synchronised profiles");

    auto *reflectors = app.add_subcommand("reflectors", "select reflectors that push the link into mediumband");
    std::string scene_file, profile_file;
    reflectors->add_option("--scene", scene_file, "scene JSON")->required();
    reflectors->add_option("--profile", profile_file, "base delay profile JSON")->required();
    reflectors->add_option("--ts", ts, "symbol period T_s [s]")->required();
    reflectors->add_option("--pds", target, "target PDS in percent")->required();
    reflectors->add_option("--lambda", lambda, "narrowband ratio")->capture_default_str();

    auto *run = app.add_subcommand("run", "execute a scenario (or manifest) JSON file");
    std::string scenario_file;
    run->add_option("scenario", scenario_file, "scenario JSON")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : mediumband::kExitSchema;
    }

    mediumband::RunOptions options;
    options.threads = threads;
    if (!out_dir.empty())
        options.output_dir = out_dir;

    mediumband::RunOutcome outcome;
    if (run->parsed())
    {
        outcome = mediumband::run_scenario_file(scenario_file, options);
    }
    else
    {
        json doc = {{"name", app.get_subcommands().front()->get_name()}, {"seed", seed}};
        if (classify->parsed())
            doc.update({{"mode", "classify"}, {"parameters", {{"t_m_s", tm}, {"t_s_s", ts}, {"lambda", lambda}}}});
        else if (plan->parsed())
            doc.update({{"mode", "plan"}, {"parameters", {{"t_m_s", tm}, {"target_pds", target}, {"lambda", lambda}}}});
        else if (campaign->parsed())
            doc.update({{"mode", "campaign"}, {"parameters", cflags.parameters()}});
        else if (ber->parsed())
        {
            json p = cflags.parameters();
            try
            {
                p["snr_db"] = parse_list(snr_text);
            }
            catch (const std::exception &)
            {
                std::cerr << json{{"error", "schema"}, {"field", "--snr"}, {"message", "not a number list"}}.dump()
                          << "\n";
                return mediumband::kExitSchema;
            }
            p["modulation"] = modulation;
            p["symbols_per_trial"] = symbols;
            doc.update({{"mode", "ber"}, {"parameters", p}});
        }
        else if (ofdm->parsed())
        {
            json p = cflags.parameters();
            p["n_taps"] = n_taps;
            p["n_fft"] = n_fft;
            p["tap_source"] = iid ? "iid" : "profile";
            doc.update({{"mode", "ofdm"}, {"parameters", p}});
        }
        else if (reflectors->parsed())
            doc.update({{"mode", "reflectors"},
                        {"parameters",
                         {{"scene_file", scene_file},
                          {"base_profile_file", profile_file},
                          {"t_s_s", ts},
                          {"target_pds", target},
                          {"lambda", lambda}}}});
        if (!out_dir.empty())
            doc["output_dir"] = out_dir;
        outcome = mediumband::run_scenario(doc, options);
    }

    if (outcome.exit_code == mediumband::kExitOk || outcome.exit_code == mediumband::kExitInfeasible)
    {
        if (as_json)
            std::cout << outcome.report.dump(2) << "\n";
        else
            std::cout << outcome.summary << "\n";
    }
    if (outcome.exit_code != mediumband::kExitOk)
        std::cerr << outcome.report.dump() << "\n";
    return outcome.exit_code;
}
