/*
   Copyright 2026 The polarq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarq/acceptance.hpp"
#include "polarq/cli_commands.hpp"
#include "polarq/kernels.hpp"

namespace {

polarq::Config load_config(const std::string& path,
                           const std::vector<std::string>& overrides) {
    polarq::Config cfg = polarq::Config::load(path);
    for (const std::string& kv : overrides) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw polarq::ConfigError("--set wants key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-ary polar coding toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::vector<std::string> csvs;
    std::string data_dir = "data";
    std::string work_dir = ".";

    auto add_config_opts = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "key=value config file")->required();
        sub->add_option("--set", overrides, "override config entries (key=value)");
    };

    CLI::App* c_construct = app.add_subcommand("construct", "estimate Z and select a code");
    add_config_opts(c_construct);
    CLI::App* c_src = app.add_subcommand("simulate-source", "source coding sweep");
    add_config_opts(c_src);
    CLI::App* c_chan = app.add_subcommand("simulate-channel", "channel coding sweep");
    add_config_opts(c_chan);
    CLI::App* c_deg = app.add_subcommand("check-degradation", "exact Claim-2 ordering check");
    add_config_opts(c_deg);
    CLI::App* c_plot = app.add_subcommand("plot", "render CSVs as standalone SVGs");
    c_plot->add_option("csv", csvs, "CSV files produced by this tool")->required();
    CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance suite");
    c_verify->add_option("--data-dir", data_dir, "repo data directory (packings)");
    c_verify->add_option("--work-dir", work_dir, "scratch directory for run outputs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_construct->parsed()) {
            const auto res = polarq::cli::run_construct(load_config(config_path, overrides));
            std::printf("q=%u n=%zu |A|=%zu R_c=%.6f R_s=%.6f bound_pe=%.6g kernels=%s\n",
                        res.code.q, res.code.n, res.code.k(), res.r_c, res.r_s, res.bound,
                        polarq::kernels::active().name);
        } else if (c_src->parsed()) {
            const auto res =
                polarq::cli::run_simulate_source(load_config(config_path, overrides));
            for (const auto& p : res.points)
                std::printf("%s frames=%llu ser=%.6g wer=%.6g (%.2fs)\n", p.id.c_str(),
                            static_cast<unsigned long long>(p.frames), p.ser, p.wer,
                            p.wall_time);
        } else if (c_chan->parsed()) {
            const auto res =
                polarq::cli::run_simulate_channel(load_config(config_path, overrides));
            for (const auto& p : res.points)
                std::printf("snr_db=%s frames=%llu ser=%.6g wer=%.6g (%.2fs)\n", p.id.c_str(),
                            static_cast<unsigned long long>(p.frames), p.ser, p.wer,
                            p.wall_time);
        } else if (c_deg->parsed()) {
            std::string summary;
            const auto rep = polarq::cli::run_check_degradation(
                load_config(config_path, overrides), &summary);
            std::fputs(summary.c_str(), stdout);
            if (!rep.ordering_holds) return 3;
        } else if (c_plot->parsed()) {
            for (const std::string& out : polarq::cli::run_plot(csvs))
                std::printf("wrote %s\n", out.c_str());
        } else if (c_verify->parsed()) {
            polarq::acceptance::Options opt;
            opt.data_dir = data_dir;
            opt.work_dir = work_dir;
            const int failures = polarq::acceptance::run_all(opt, std::cout);
            if (failures > 0) return 3;
        }
    } catch (const polarq::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
