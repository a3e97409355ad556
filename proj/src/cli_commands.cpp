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

#include "polarq/cli_commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "polarq/channel_codec.hpp"
#include "polarq/sc_decoder.hpp"
#include "polarq/source_codec.hpp"

namespace polarq::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void run_workers(unsigned workers, const std::function<void()>& fn) {
    if (workers <= 1) {
        fn();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fn);
    for (auto& th : pool) th.join();
}

std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// A noiseless channel observation: the transmitted symbol at +clamp,
/// everything else at -clamp.
LlrVector delta_llr(unsigned q, Symbol x) {
    LlrVector v(q);
    for (unsigned s = 1; s < q; ++s) v.set(static_cast<Symbol>(s), s == x ? kLlrClamp : -kLlrClamp);
    return v;
}

} // namespace

JointSource load_model(const Config& cfg, std::string* description) {
    const std::string spec = cfg.get("model");
    JointSource m;
    if (spec == "table") {
        m = JointSource::table_source();
    } else if (spec.rfind("qsc:", 0) == 0) {
        const auto parts = split(spec.substr(4), ',');
        if (parts.size() != 2) throw ConfigError("model qsc wants qsc:<q>,<eps>");
        const unsigned q = static_cast<unsigned>(std::stoul(parts[0]));
        const double eps = std::stod(parts[1]);
        if (eps < 0.0 || eps >= 1.0) throw ConfigError("qsc eps must be in [0,1)");
        m = JointSource::from_dmc(DmcChannel::qsc(q, eps));
    } else if (spec.rfind("file:", 0) == 0) {
        m = JointSource::load(spec.substr(5));
    } else {
        throw ConfigError("unknown model spec: " + spec +
                          " (expected table, qsc:<q>,<eps> or file:<path>)");
    }
    m.validate(1e-3);
    if (description) *description = spec;
    return m;
}

Constellation load_constellation(const Config& cfg, std::string* description) {
    const std::string spec = cfg.get("constellation");
    Constellation c;
    if (spec.rfind("pam:", 0) == 0) {
        c = Constellation::make_pam(static_cast<unsigned>(std::stoul(spec.substr(4))));
    } else if (spec.rfind("rqam:", 0) == 0) {
        c = Constellation::make_rect_qam(static_cast<unsigned>(std::stoul(spec.substr(5))));
    } else if (spec.rfind("circ:", 0) == 0) {
        c = Constellation::load_circular(spec.substr(5));
    } else {
        throw ConfigError("unknown constellation spec: " + spec +
                          " (expected pam:<q>, rqam:<q_axis> or circ:<path>)");
    }
    if (cfg.get_bool_or("normalize", true)) c = c.normalized();
    if (description) *description = spec;
    return c;
}

ConstructResult run_construct(const Config& cfg) {
    const size_t n = cfg.get_u64("n");
    const uint64_t seed = cfg.get_u64_or("seed", 1);
    const unsigned workers = static_cast<unsigned>(cfg.get_u64_or("workers", 1));
    const std::string mode = cfg.get_or("mode", "mc");
    const SelectionCriterion crit =
        SelectionCriterion::parse(cfg.get_or("criterion", "sum-bound 0.0001"));

    std::string desc;
    std::unique_ptr<TrialSampler> sampler;
    JointSource model;
    bool have_model = false;
    unsigned q = 0;

    if (cfg.has("constellation")) {
        std::string cdesc;
        const Constellation c = load_constellation(cfg, &cdesc);
        const bool real_only = cfg.get_bool_or("real_only", false);
        const double snr_db = cfg.get_double("snr_db");
        const NoiseModel nm = NoiseModel::from_snr_db(snr_db, c.es(), real_only);
        q = c.q;
        desc = "awgn " + cdesc + " snr_db=" + format_double(snr_db) +
               (real_only ? " real_only=1" : "");
        sampler = std::make_unique<AwgnSampler>(c, nm, real_only);
    } else {
        model = load_model(cfg, &desc);
        have_model = true;
        q = model.q;
        sampler = std::make_unique<SourceSampler>(model);
    }

    Field f(q);
    ZEstimate z;
    if (mode == "exact") {
        if (!have_model)
            throw ConfigError("exact construction needs a discrete model, not a constellation");
        z.z = exact_z_all(f, model, n);
        z.se.assign(n, 0.0);
        z.trials = 0;
    } else if (mode == "mc") {
        const uint64_t trials = cfg.get_u64("trials");
        if (trials == 0) throw ConfigError("trials must be >= 1");
        z = estimate_z_mc(f, *sampler, n, trials, seed, workers);
    } else {
        throw ConfigError("mode must be mc or exact");
    }

    ConstructResult res;
    res.code = select_info_set(f, std::move(z), crit);
    res.code.seed = seed;
    res.code.model = desc;
    res.r_c = res.code.rate_channel();
    res.r_s = res.code.rate_source();
    res.bound = res.code.error_bound();

    if (cfg.has("out")) res.code.save(cfg.get("out"));
    if (cfg.has("csv")) {
        std::vector<double> sorted = res.code.z.z;
        std::sort(sorted.begin(), sorted.end());
        CsvWriter csv(cfg.get("csv"));
        csv.metadata("command", "construct");
        csv.metadata("model", desc);
        csv.metadata("mode", mode);
        csv.metadata("criterion", crit.str());
        csv.metadata("q", std::to_string(q));
        csv.metadata("n", std::to_string(n));
        csv.metadata("seed", std::to_string(seed));
        csv.metadata("trials", std::to_string(res.code.z.trials));
        csv.metadata("code_hash", hash_hex(res.code.hash()));
        csv.metadata("r_s", format_double(res.r_s));
        csv.metadata("r_c", format_double(res.r_c));
        csv.header({"index", "z", "stderr", "z_sorted"});
        for (size_t i = 0; i < n; ++i)
            csv.row({std::to_string(i), format_double(res.code.z.z[i]),
                     format_double(res.code.z.se[i]), format_double(sorted[i])});
        csv.close();
    }
    return res;
}

SimResult run_simulate_source(const Config& cfg) {
    const PolarCode code = PolarCode::load(cfg.get("code"));
    std::string desc;
    const JointSource model = load_model(cfg, &desc);
    if (model.q != code.q) throw ConfigError("model alphabet does not match code field");
    const uint64_t blocks = cfg.get_u64("blocks");
    if (blocks == 0) throw ConfigError("blocks must be >= 1");
    const uint64_t seed = cfg.get_u64_or("seed", 1);
    const unsigned workers = static_cast<unsigned>(cfg.get_u64_or("workers", 1));

    const Field f(code.q);
    const double t0 = now_seconds();
    std::atomic<uint64_t> next{0}, sym_err{0}, blk_err{0};

    run_workers(workers, [&]() {
        ScDecoder dec(f, code.n);
        std::vector<Symbol> x(code.n);
        std::vector<unsigned> y(code.n);
        for (;;) {
            const uint64_t b = next.fetch_add(1);
            if (b >= blocks) break;
            CounterRng rng(seed, b);
            for (size_t i = 0; i < code.n; ++i) model.sample(rng, x[i], y[i]);
            const CompressedBlock blk = compress(f, code, x);
            const std::vector<Symbol> xhat = decompress(code, blk, y, model, dec);
            uint64_t e = 0;
            for (size_t i = 0; i < code.n; ++i)
                if (xhat[i] != x[i]) ++e;
            sym_err.fetch_add(e);
            if (e) blk_err.fetch_add(1);
        }
    });

    SimResult res;
    res.code_hash = code.hash();
    SimPoint p;
    p.id = desc;
    p.frames = blocks;
    p.symbols = blocks * code.n;
    p.symbol_errors = sym_err.load();
    p.block_errors = blk_err.load();
    p.ser = static_cast<double>(p.symbol_errors) / static_cast<double>(p.symbols);
    p.wer = static_cast<double>(p.block_errors) / static_cast<double>(p.frames);
    p.wall_time = now_seconds() - t0;
    res.points.push_back(p);

    if (cfg.has("csv")) {
        CsvWriter csv(cfg.get("csv"));
        csv.metadata("command", "simulate-source");
        csv.metadata("model", desc);
        csv.metadata("code", cfg.get("code"));
        csv.metadata("code_hash", hash_hex(res.code_hash));
        csv.metadata("q", std::to_string(code.q));
        csv.metadata("n", std::to_string(code.n));
        csv.metadata("r_s", format_double(code.rate_source()));
        csv.metadata("seed", std::to_string(seed));
        csv.header({"model_id", "frames", "symbol_errors", "ser", "block_errors", "wer",
                    "wall_time"});
        csv.row({p.id, std::to_string(p.frames), std::to_string(p.symbol_errors),
                 format_double(p.ser), std::to_string(p.block_errors), format_double(p.wer),
                 format_double(p.wall_time)});
        csv.close();
    }
    return res;
}

SimResult run_simulate_channel(const Config& cfg) {
    const PolarCode code = PolarCode::load(cfg.get("code"));
    std::string cdesc;
    const Constellation c = load_constellation(cfg, &cdesc);
    if (c.q != code.q) throw ConfigError("constellation size does not match code field");
    const bool real_only = cfg.get_bool_or("real_only", false);
    const bool noiseless = cfg.get_bool_or("noiseless", false);
    const uint64_t frames = cfg.get_u64("frames");
    if (frames == 0) throw ConfigError("frames must be >= 1");
    const uint64_t seed = cfg.get_u64_or("seed", 1);
    const uint64_t frozen_seed = cfg.get_u64_or("frozen_seed", seed);
    const unsigned workers = static_cast<unsigned>(cfg.get_u64_or("workers", 1));

    std::vector<double> snrs;
    if (!noiseless)
        for (const std::string& s : split(cfg.get("snr_db"), ','))
            snrs.push_back(std::stod(s));
    else
        snrs.push_back(0.0);

    const Field f(code.q);
    const size_t k = code.k();
    const size_t fsize = code.n - k;

    SimResult res;
    res.code_hash = code.hash();
    for (double snr_db : snrs) {
        const NoiseModel nm = noiseless ? NoiseModel{1.0}
                                        : NoiseModel::from_snr_db(snr_db, c.es(), real_only);
        const double t0 = now_seconds();
        std::atomic<uint64_t> next{0}, sym_err{0}, blk_err{0};

        run_workers(workers, [&]() {
            ScDecoder dec(f, code.n);
            const AwgnLlr llr(c, nm, real_only);
            std::vector<Symbol> s(k);
            std::vector<LlrVector> init(code.n);
            for (;;) {
                const uint64_t fr = next.fetch_add(1);
                if (fr >= frames) break;
                CounterRng mrng(seed, 2 * fr);
                for (size_t i = 0; i < k; ++i) s[i] = static_cast<Symbol>(mrng.next_below(code.q));
                FrozenStream enc_fs{frozen_seed, code.q, fr * fsize};
                const std::vector<Symbol> x = channel_encode(f, code, s, enc_fs);
                if (noiseless) {
                    for (size_t i = 0; i < code.n; ++i) init[i] = delta_llr(code.q, x[i]);
                } else {
                    const auto y = transmit(c, x, nm, seed, 2 * fr + 1, real_only);
                    llr.fill(y, init);
                }
                FrozenStream dec_fs{frozen_seed, code.q, fr * fsize};
                const std::vector<Symbol> shat = channel_decode(code, init, dec_fs, dec);
                uint64_t e = 0;
                for (size_t i = 0; i < k; ++i)
                    if (shat[i] != s[i]) ++e;
                sym_err.fetch_add(e);
                if (e) blk_err.fetch_add(1);
            }
        });

        SimPoint p;
        p.id = noiseless ? "noiseless" : format_double(snr_db);
        p.frames = frames;
        p.symbols = frames * k;
        p.symbol_errors = sym_err.load();
        p.block_errors = blk_err.load();
        p.ser = static_cast<double>(p.symbol_errors) / static_cast<double>(p.symbols);
        p.wer = static_cast<double>(p.block_errors) / static_cast<double>(p.frames);
        p.wall_time = now_seconds() - t0;
        res.points.push_back(p);
    }

    if (cfg.has("csv")) {
        CsvWriter csv(cfg.get("csv"));
        csv.metadata("command", "simulate-channel");
        csv.metadata("constellation", cdesc);
        csv.metadata("code", cfg.get("code"));
        csv.metadata("code_hash", hash_hex(res.code_hash));
        csv.metadata("q", std::to_string(code.q));
        csv.metadata("n", std::to_string(code.n));
        csv.metadata("r_c", format_double(code.rate_channel()));
        csv.metadata("r_bits", format_double(code.rate_channel() * std::log2(code.q)));
        csv.metadata("seed", std::to_string(seed));
        csv.metadata("frozen_seed", std::to_string(frozen_seed));
        csv.metadata("real_only", real_only ? "1" : "0");
        csv.header({"snr_db", "frames", "symbol_errors", "ser", "block_errors", "wer",
                    "wall_time"});
        for (const SimPoint& p : res.points)
            csv.row({p.id, std::to_string(p.frames), std::to_string(p.symbol_errors),
                     format_double(p.ser), std::to_string(p.block_errors),
                     format_double(p.wer), format_double(p.wall_time)});
        csv.close();
    }
    return res;
}

DegradationReport run_check_degradation(const Config& cfg, std::string* summary) {
    const unsigned q = static_cast<unsigned>(cfg.get_u64("q"));
    const size_t n = cfg.get_u64("n");
    const double eps2 = cfg.get_double("eps2");
    const DmcChannel p2 = DmcChannel::qsc(q, eps2);

    std::vector<double> w;
    const std::string wspec = cfg.get_or("w", "identity");
    if (wspec == "identity") {
        w.assign(static_cast<size_t>(q) * q, 0.0);
        for (unsigned y = 0; y < q; ++y) w[y * q + y] = 1.0;
    } else if (wspec.rfind("qsc:", 0) == 0) {
        const double epsw = std::stod(wspec.substr(4));
        const DmcChannel wc = DmcChannel::qsc(q, epsw);
        w = wc.p;
    } else {
        throw ConfigError("w must be identity or qsc:<eps>");
    }

    const Field f(q);
    const DegradationReport rep =
        check_degradation_ordering(f, p2, w, q, n, cfg.get_double_or("slack", 1e-12));
    if (summary) {
        std::ostringstream out;
        out << "degradation check q=" << q << " n=" << n << " eps2=" << eps2
            << " w=" << wspec << "\n";
        for (size_t i = 0; i < n; ++i)
            out << "  i=" << i << " z_degraded=" << format_double(rep.z_degraded[i])
                << " z_better=" << format_double(rep.z_better[i]) << "\n";
        out << (rep.ordering_holds ? "ordering holds" : "ORDERING VIOLATED") << " (max violation "
            << format_double(rep.max_violation) << ")\n";
        *summary = out.str();
    }
    return rep;
}

std::vector<std::string> run_plot(const std::vector<std::string>& csv_paths) {
    std::vector<std::string> written;
    for (const std::string& path : csv_paths) {
        const CsvTable t = CsvTable::load(path);
        if (t.rows.empty()) throw std::runtime_error("csv has no data rows: " + path);

        PlotSpec spec;
        auto meta = [&t](const std::string& k) {
            auto it = t.metadata.find(k);
            return it == t.metadata.end() ? std::string() : it->second;
        };
        const std::string cmd = meta("command");

        if (t.column_index("z_sorted") >= 0) {
            const int zi = t.column_index("z_sorted");
            PlotSeries s;
            s.label = "n=" + meta("n");
            const double n = static_cast<double>(t.rows.size());
            // descending, largest first, index normalized by N
            for (size_t r = 0; r < t.rows.size(); ++r) {
                s.x.push_back(static_cast<double>(r + 1) / n);
                s.y.push_back(std::max(std::stod(t.rows[t.rows.size() - 1 - r][zi]), 1e-12));
            }
            spec.title = "Ordered Bhattacharyya parameters (" + meta("model") + ")";
            spec.xlabel = "index / N";
            spec.ylabel = "Z";
            spec.log_y = true;
            spec.series.push_back(std::move(s));
        } else if (t.column_index("snr_db") >= 0 && cmd == "simulate-channel") {
            const int xi = t.column_index("snr_db");
            const int yi = t.column_index("ser");
            PlotSeries s;
            s.label = meta("constellation") + " R=" + meta("r_bits") + "b";
            for (const auto& row : t.rows) {
                s.x.push_back(std::stod(row[xi]));
                s.y.push_back(std::max(std::stod(row[yi]), 1e-12));
            }
            spec.title = "Symbol error rate vs SNR (n=" + meta("n") + ")";
            spec.xlabel = "SNR (dB)";
            spec.ylabel = "SER";
            spec.log_y = true;
            spec.series.push_back(std::move(s));
        } else if (t.column_index("ser") >= 0) {
            const int yi = t.column_index("ser");
            PlotSeries s;
            s.label = meta("model");
            for (size_t r = 0; r < t.rows.size(); ++r) {
                s.x.push_back(static_cast<double>(r));
                s.y.push_back(std::max(std::stod(t.rows[r][yi]), 1e-12));
            }
            spec.title = "Symbol error rate (" + meta("command") + ")";
            spec.xlabel = "run";
            spec.ylabel = "SER";
            spec.log_y = true;
            spec.series.push_back(std::move(s));
        } else {
            throw std::runtime_error("csv not recognized as a plottable table: " + path);
        }

        std::string out = path;
        const size_t dot = out.find_last_of('.');
        out = (dot == std::string::npos ? out : out.substr(0, dot)) + ".svg";
        write_svg_plot(out, spec);
        written.push_back(out);
    }
    return written;
}

} // namespace polarq::cli
