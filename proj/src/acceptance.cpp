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

#include "polarq/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "polarq/channel_codec.hpp"
#include "polarq/cli_commands.hpp"
#include "polarq/construction.hpp"
#include "polarq/io.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/oracle.hpp"
#include "polarq/sc_decoder.hpp"
#include "polarq/source_codec.hpp"
#include "polarq/transform.hpp"

namespace polarq::acceptance {

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string join(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Drops the trailing wall_time cell from every data row; metadata and
/// header keep their wall_time mention, only the measured cell varies.
std::string strip_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            const size_t comma = line.find_last_of(',');
            if (comma != std::string::npos) line.erase(comma);
        }
        out << line << "\n";
    }
    return out.str();
}

/// Random joint model with all probabilities bounded away from zero, so
/// no log-ratio comes near the clamp.
JointSource random_model(unsigned q, unsigned ysize, CounterRng& rng) {
    JointSource m;
    m.q = q;
    m.ysize = ysize;
    m.py.resize(ysize);
    m.px_given_y.resize(static_cast<size_t>(ysize) * q);
    double pys = 0.0;
    for (unsigned y = 0; y < ysize; ++y) pys += (m.py[y] = 0.1 + rng.next_double());
    for (unsigned y = 0; y < ysize; ++y) m.py[y] /= pys;
    for (unsigned y = 0; y < ysize; ++y) {
        double s = 0.0;
        for (unsigned x = 0; x < q; ++x)
            s += (m.px_given_y[y * q + x] = 0.05 + rng.next_double());
        for (unsigned x = 0; x < q; ++x) m.px_given_y[y * q + x] /= s;
    }
    m.px.assign(q, 0.0);
    for (unsigned y = 0; y < ysize; ++y)
        for (unsigned x = 0; x < q; ++x) m.px[x] += m.px_given_y[y * q + x] * m.py[y];
    m.validate();
    return m;
}

struct CheckResult {
    bool pass = false;
    std::string detail;
};

// 1. Every decision-level LR vector matches the enumerated posterior.
CheckResult check_oracle_equivalence() {
    const double t0 = now();
    double worst = 0.0;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const Field f(q);
        for (size_t n : {size_t{2}, size_t{4}, size_t{8}}) {
            ScDecoder dec(f, n);
            for (unsigned trial = 0; trial < 50; ++trial) {
                CounterRng rng(4001, (static_cast<uint64_t>(q) << 40) ^ (n << 20) ^ trial);
                const unsigned ysize = 2 + trial % 3;
                const JointSource m = random_model(q, ysize, rng);
                std::vector<unsigned> y(n);
                std::vector<Symbol> u(n);
                std::vector<LlrVector> init(n);
                for (size_t i = 0; i < n; ++i) {
                    y[i] = rng.next_below(ysize);
                    u[i] = static_cast<Symbol>(rng.next_below(q));
                    init[i] = side_info_llr(m, y[i]);
                }
                const oracle::PosteriorTable pt(f, m, y);
                dec.decode(init, FrozenPolicy::genie(u));
                for (size_t i = 0; i < n; ++i) {
                    const LlrVector ref =
                        pt.llr(i, std::span<const Symbol>(u.data(), i));
                    const auto got = dec.top_llr(i);
                    for (unsigned k = 0; k + 1 < q; ++k)
                        worst = std::max(worst, std::abs(got[k] - ref.l[k]));
                }
            }
        }
    }
    const double dt = now() - t0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |log LR - oracle| = %.3g (limit 1e-8), %.1fs",
                  worst, dt);
    return {worst <= 1e-8 && dt < 120.0, buf};
}

// 2. q = 2 decisions identical to the scalar binary decoder on realistic
// rate-1/2 frames. The frozen set must cover the near-uniform indices:
// their decision LLRs sit below the double rounding floor, where two
// correct implementations can legitimately disagree on the sign.
CheckResult check_binary_reduction() {
    const double t0 = now();
    const Field f(2);
    const Constellation c = Constellation::make_pam(2).normalized();
    const NoiseModel nm = NoiseModel::from_snr_db(3.0, c.es(), false);
    const AwgnSampler sampler(c, nm, false);
    const AwgnLlr front(c, nm, false);

    uint64_t mismatches = 0, frames_total = 0;
    const size_t lens[] = {8, 64, 256};
    const uint64_t counts[] = {5000, 4000, 1000};
    for (int g = 0; g < 3; ++g) {
        const size_t n = lens[g];
        const ZEstimate z = estimate_z_mc(f, sampler, n, 2000, 4002 + n);
        SelectionCriterion crit;
        crit.kind = SelectionCriterion::Kind::FixedRate;
        crit.rate_k = n / 2;
        const PolarCode code = select_info_set(f, z, crit);
        const std::vector<uint32_t> frozen = code.frozen_set();

        ScDecoder dec(f, n);
        std::vector<double> init(n);
        std::vector<LlrVector> vinit(n, LlrVector(2));
        std::vector<uint8_t> is_frozen(n, 0), fval(n, 0);
        std::vector<Symbol> fsym(frozen.size());
        for (uint64_t fr = 0; fr < counts[g]; ++fr) {
            CounterRng rng(4102, (n << 32) ^ fr);
            std::vector<Symbol> s(code.k());
            for (auto& v : s) v = static_cast<Symbol>(rng.next_below(2));
            FrozenStream fs{4202 + n, 2, 0};
            const auto x = channel_encode(f, code, s, fs);
            const auto y = transmit(c, x, nm, 4302 + n, fr);
            for (size_t i = 0; i < n; ++i) {
                init[i] = front(y[i]).l[0];
                vinit[i].l[0] = init[i];
            }
            std::fill(is_frozen.begin(), is_frozen.end(), 0);
            for (size_t j = 0; j < frozen.size(); ++j) {
                fsym[j] = FrozenStream{4202 + n, 2, 0}.at(j);
                is_frozen[frozen[j]] = 1;
                fval[frozen[j]] = static_cast<uint8_t>(fsym[j]);
            }
            const auto ref = oracle::binary_reference_sc(init, is_frozen, fval);
            const auto got =
                dec.decode(vinit, FrozenPolicy::explicit_values(n, frozen, fsym));
            for (size_t i = 0; i < n; ++i)
                if (got.u[i] != ref.u[i] || got.x[i] != ref.x[i]) ++mismatches;
            ++frames_total;
        }
    }
    const double dt = now() - t0;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%llu frames, %llu symbol mismatches, %.1fs",
                  static_cast<unsigned long long>(frames_total),
                  static_cast<unsigned long long>(mismatches), dt);
    return {mismatches == 0 && dt < 60.0, buf};
}

// 3. Transform roundtrips and noiseless encode/decode identities.
CheckResult check_roundtrips() {
    uint64_t cases = 0, failures = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 8u}) {
        const Field f(q);
        for (size_t n : {size_t{2}, size_t{4}, size_t{16}, size_t{64}, size_t{256},
                         size_t{1024}}) {
            for (uint64_t seed : {uint64_t{1}, uint64_t{2}}) {
                CounterRng rng(4003 + seed, (static_cast<uint64_t>(q) << 32) ^ n);
                std::vector<Symbol> x(n);
                for (auto& s : x) s = static_cast<Symbol>(rng.next_below(q));
                ++cases;
                if (polar_decode_transform(f, polar_encode(f, x)) != x) ++failures;
                ++cases;
                if (polar_encode(f, polar_decode_transform(f, x)) != x) ++failures;

                // codes with a random-profile info set, half rate and full rate
                for (size_t k : {n / 2, n}) {
                    ZEstimate ze;
                    ze.z.resize(n);
                    ze.se.assign(n, 0.0);
                    for (auto& z : ze.z) z = rng.next_double();
                    SelectionCriterion crit;
                    crit.kind = SelectionCriterion::Kind::FixedRate;
                    crit.rate_k = k;
                    const PolarCode code = select_info_set(f, ze, crit);

                    std::vector<Symbol> s(k);
                    for (auto& v : s) v = static_cast<Symbol>(rng.next_below(q));
                    FrozenStream enc{seed, q, 0}, dcs{seed, q, 0};
                    const auto tx = channel_encode(f, code, s, enc);
                    std::vector<LlrVector> init(n);
                    for (size_t i = 0; i < n; ++i) {
                        init[i] = LlrVector(q);
                        for (unsigned v = 1; v < q; ++v)
                            init[i].set(static_cast<Symbol>(v),
                                        v == tx[i] ? kLlrClamp : -kLlrClamp);
                    }
                    ++cases;
                    if (channel_decode(f, code, init, dcs) != s) ++failures;

                    // lossless compression round trip with perfect side information
                    const JointSource psi = JointSource::perfect_side_info(
                        q, std::vector<double>(q, 1.0 / q));
                    std::vector<unsigned> y(x.begin(), x.end());
                    const CompressedBlock blk = compress(f, code, x);
                    ++cases;
                    if (decompress(f, code, blk, y, psi) != x) ++failures;
                }
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%llu cases, %llu failures",
                  static_cast<unsigned long long>(cases),
                  static_cast<unsigned long long>(failures));
    return {failures == 0, buf};
}

// 4. Degraded channels never have smaller Z, and identity degradation
// changes nothing.
CheckResult check_degradation() {
    unsigned pairs = 0, violations = 0;
    double worst = 0.0;
    for (unsigned q : {2u, 3u}) {
        const Field f(q);
        for (size_t n : {size_t{2}, size_t{4}}) {
            for (double eps2 : {0.05, 0.1, 0.2}) {
                const DmcChannel p2 = DmcChannel::qsc(q, eps2);
                for (double epsw : {0.02, 0.05, 0.1}) {
                    const DmcChannel wc = DmcChannel::qsc(q, epsw);
                    const auto rep = check_degradation_ordering(f, p2, wc.p, q, n);
                    ++pairs;
                    if (!rep.ordering_holds) ++violations;
                    worst = std::max(worst, rep.max_violation);
                }
            }
            // identity post-processing must leave the profile untouched
            std::vector<double> id(static_cast<size_t>(q) * q, 0.0);
            for (unsigned y = 0; y < q; ++y) id[y * q + y] = 1.0;
            const auto rep =
                check_degradation_ordering(f, DmcChannel::qsc(q, 0.1), id, q, n);
            ++pairs;
            double dev = 0.0;
            for (size_t i = 0; i < n; ++i)
                dev = std::max(dev, std::abs(rep.z_degraded[i] - rep.z_better[i]));
            if (dev > 1e-12 || !rep.ordering_holds) ++violations;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%u pairs, %u violations, max excess %.3g",
                  pairs, violations, worst);
    return {pairs >= 20 && violations == 0, buf};
}

// 5. Reference table source: analytic H(X|Y) and an independent sampled
// estimate both sit at the published value.
CheckResult check_table_entropy() {
    const JointSource m = JointSource::table_source();
    const double h = m.cond_entropy_bits();

    CounterRng rng(4005, 0);
    const uint64_t samples = 200000;
    double acc = 0.0;
    Symbol x;
    unsigned y;
    for (uint64_t t = 0; t < samples; ++t) {
        m.sample(rng, x, y);
        acc -= std::log2(m.cond_px(x, y));
    }
    const double h_mc = acc / samples;

    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "H(X|Y) = %.5f bits (target 1.90061 +- 0.02), sampled %.5f", h,
                  h_mc);
    return {std::abs(h - 1.90061) <= 0.02 && std::abs(h_mc - h) <= 0.02, buf};
}

struct SourceTrend {
    PolarCode code1024, code4096;
    bool ok = false;
};

// 6. Source-coding rates shrink with block length toward the conditional
// entropy, and the long code compresses losslessly in practice.
CheckResult check_source_trend(const Options& opt, SourceTrend& st) {
    const double t0 = now();
    auto construct = [&](size_t n, uint64_t seed, const std::string& name) {
        Config cfg;
        cfg.set("model", "table");
        cfg.set("n", std::to_string(n));
        cfg.set("trials", "3000");
        cfg.set("seed", std::to_string(seed));
        cfg.set("criterion", "sum-bound 0.0001");
        cfg.set("out", join(opt.work_dir, name));
        return cli::run_construct(cfg);
    };
    const auto r1 = construct(1024, 11, "accept_table_1024.code");
    const auto r4 = construct(4096, 12, "accept_table_4096.code");
    st.code1024 = r1.code;
    st.code4096 = r4.code;
    st.ok = true;

    Config sim;
    sim.set("model", "table");
    sim.set("code", join(opt.work_dir, "accept_table_4096.code"));
    sim.set("blocks", "245");  // 245 * 4096 > 1e6 symbols
    sim.set("seed", "77");
    const auto res = cli::run_simulate_source(sim);
    const auto& p = res.points.at(0);

    const double floor_rate = 1.90061 / std::log2(5.0);  // ~0.8186
    const bool pass = r4.r_s < r1.r_s && r1.r_s > floor_rate && r4.r_s > floor_rate &&
                      p.ser <= 1e-3;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "R_s(1024)=%.4f R_s(4096)=%.4f (floor %.4f), ser=%.3g over %llu "
                  "symbols, %.0fs",
                  r1.r_s, r4.r_s, floor_rate, p.ser,
                  static_cast<unsigned long long>(p.symbols), now() - t0);
    return {pass, buf};
}

// 7. The longer code polarizes harder: its sorted-z curve is lower on the
// best decile and higher on the worst decile.
CheckResult check_polarization_shape(const SourceTrend& st) {
    if (!st.ok) return {false, "skipped: construction in check 6 failed"};
    std::vector<double> z1 = st.code1024.z.z, z4 = st.code4096.z.z;
    std::sort(z1.begin(), z1.end());
    std::sort(z4.begin(), z4.end());
    auto decile_mean = [](const std::vector<double>& z, bool last) {
        const size_t d = z.size() / 10;
        const size_t begin = last ? z.size() - d : 0;
        double s = 0.0;
        for (size_t i = begin; i < begin + d; ++i) s += z[i];
        return s / d;
    };
    const double lo1 = decile_mean(z1, false), lo4 = decile_mean(z4, false);
    const double hi1 = decile_mean(z1, true), hi4 = decile_mean(z4, true);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "first decile mean %.3g -> %.3g, last decile mean %.4f -> %.4f",
                  lo1, lo4, hi1, hi4);
    return {lo4 <= lo1 + 1e-12 && hi4 >= hi1 - 1e-12, buf};
}

// 8. 67-point circular constellation at 20 dB: sensible rate, low SER.
CheckResult check_circular_channel(const Options& opt) {
    const double t0 = now();
    const std::string packing = join(opt.data_dir, "packings/circ67.txt");
    const std::string code_path = join(opt.work_dir, "accept_circ67.code");

    Config cfg;
    cfg.set("constellation", "circ:" + packing);
    cfg.set("snr_db", "20");
    cfg.set("n", "2048");
    cfg.set("trials", "6000");
    cfg.set("seed", "21");
    cfg.set("criterion", "per-index 0.0001");
    cfg.set("out", code_path);
    const auto res = cli::run_construct(cfg);
    const double r_bits = res.r_c * std::log2(67.0);

    Config sim;
    sim.set("constellation", "circ:" + packing);
    sim.set("code", code_path);
    sim.set("snr_db", "20");
    sim.set("frames", "200");
    sim.set("seed", "33");
    const auto sr = cli::run_simulate_channel(sim);
    const auto& p = sr.points.at(0);

    const bool pass = r_bits >= 4.5 && r_bits <= 6.04 && p.ser <= 1e-2;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "R = %.3f bits/use (band [4.5, 6.04]), ser=%.3g over %llu frames, %.0fs",
                  r_bits, p.ser, static_cast<unsigned long long>(p.frames), now() - t0);
    return {pass, buf};
}

double time_decode(const Field& f, size_t n, int reps) {
    ScDecoder dec(f, n);
    CounterRng rng(4009, (static_cast<uint64_t>(f.q()) << 32) ^ n);
    std::vector<LlrVector> init(n, LlrVector(f.q()));
    for (auto& v : init)
        for (auto& x : v.l) x = 10.0 * rng.next_double() - 5.0;
    FrozenPolicy none;
    none.is_frozen.assign(n, 0);
    dec.decode(init, none);  // warm up caches and the allocator
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        dec.decode(init, none);
        best = std::min(best, now() - t0);
    }
    return best;
}

// 9. Decode cost scales like N log2 N in the block length and no faster
// than q^2 in the field order.
CheckResult check_complexity() {
    const Field f5(5);
    const size_t lens[] = {256, 1024, 4096};
    const int reps[] = {60, 20, 8};
    double ratio[3];
    for (int i = 0; i < 3; ++i) {
        const double t = time_decode(f5, lens[i], reps[i]);
        ratio[i] = t / (static_cast<double>(lens[i]) * std::log2(lens[i]));
    }
    const double c = (ratio[0] + ratio[1] + ratio[2]) / 3.0;
    bool nlogn_ok = true;
    for (double r : ratio) nlogn_ok = nlogn_ok && std::abs(r - c) <= 0.25 * c;

    const double t3 = time_decode(Field(3), 1024, 20);
    const double t5 = time_decode(Field(5), 1024, 20);
    const double t8 = time_decode(Field(8), 1024, 20);
    const double cq = t3 / 9.0;
    const bool q_ok = t5 <= 1.25 * cq * 25.0 && t8 <= 1.25 * cq * 64.0;

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "t/(N log N) spread %.2f..%.2f of mean; q-growth t5/t3=%.2f "
                  "(<=%.2f), t8/t3=%.2f (<=%.2f)",
                  *std::min_element(ratio, ratio + 3) / c,
                  *std::max_element(ratio, ratio + 3) / c, t5 / t3,
                  1.25 * 25.0 / 9.0, t8 / t3, 1.25 * 64.0 / 9.0);
    return {nlogn_ok && q_ok, buf};
}

// 10. Identical outputs for 1 and 8 workers, wall_time cell aside.
CheckResult check_determinism(const Options& opt) {
    auto out = [&](const std::string& name) { return join(opt.work_dir, name); };
    std::vector<std::string> diffs;

    for (const char* workers : {"1", "8"}) {
        Config cfg;
        cfg.set("model", "qsc:3,0.1");
        cfg.set("n", "256");
        cfg.set("trials", "512");
        cfg.set("seed", "5");
        cfg.set("criterion", "fixed-rate 128");
        cfg.set("workers", workers);
        cfg.set("out", out(std::string("accept_det_w") + workers + ".code"));
        cfg.set("csv", out(std::string("accept_det_w") + workers + ".csv"));
        cli::run_construct(cfg);

        Config src;
        src.set("model", "qsc:3,0.1");
        src.set("code", out("accept_det_w1.code"));
        src.set("blocks", "40");
        src.set("seed", "7");
        src.set("workers", workers);
        src.set("csv", out(std::string("accept_det_src_w") + workers + ".csv"));
        cli::run_simulate_source(src);

        Config chan;
        chan.set("constellation", "pam:3");
        chan.set("code", out("accept_det_w1.code"));
        chan.set("snr_db", "4,7");
        chan.set("frames", "40");
        chan.set("seed", "9");
        chan.set("workers", workers);
        chan.set("csv", out(std::string("accept_det_chan_w") + workers + ".csv"));
        cli::run_simulate_channel(chan);
    }

    if (read_file(out("accept_det_w1.code")) != read_file(out("accept_det_w8.code")))
        diffs.push_back("construct code file");
    if (read_file(out("accept_det_w1.csv")) != read_file(out("accept_det_w8.csv")))
        diffs.push_back("construct csv");
    if (strip_wall_time(read_file(out("accept_det_src_w1.csv"))) !=
        strip_wall_time(read_file(out("accept_det_src_w8.csv"))))
        diffs.push_back("simulate-source csv");
    if (strip_wall_time(read_file(out("accept_det_chan_w1.csv"))) !=
        strip_wall_time(read_file(out("accept_det_chan_w8.csv"))))
        diffs.push_back("simulate-channel csv");

    std::string detail = "construct + both simulators, 1 vs 8 workers";
    if (!diffs.empty()) {
        detail = "differs:";
        for (const auto& d : diffs) detail += " " + d;
    }
    return {diffs.empty(), detail};
}

} // namespace

int run_all(const Options& opt, std::ostream& out) {
    int failures = 0;
    size_t idx = 0;
    auto report = [&](const char* name, const CheckResult& r) {
        ++idx;
        if (!r.pass) ++failures;
        char head[16];
        std::snprintf(head, sizeof head, "[%2zu/10]", idx);
        out << head << " " << (r.pass ? "PASS" : "FAIL") << "  " << name << ": "
            << r.detail << "\n"
            << std::flush;
    };
    SourceTrend st;

    report("decoder matches enumerated posterior", check_oracle_equivalence());
    report("binary reduction", check_binary_reduction());
    report("noiseless roundtrips", check_roundtrips());
    report("degradation ordering", check_degradation());
    report("table source entropy", check_table_entropy());
    report("source coding rate trend", check_source_trend(opt, st));
    report("polarization sharpens with N", check_polarization_shape(st));
    report("circular constellation channel point", check_circular_channel(opt));
    report("decode complexity scaling", check_complexity());
    report("worker-count determinism", check_determinism(opt));

    out << (failures == 0 ? "all checks passed"
                          : std::to_string(failures) + " check(s) failed")
        << "\n";
    return failures;
}

} // namespace polarq::acceptance
