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

#include "polarq/construction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polarq/sc_decoder.hpp"
#include "polarq/source_codec.hpp"
#include "polarq/transform.hpp"

namespace polarq {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Trials are accumulated in fixed chunks and the chunks reduced in index
// order, so the totals do not depend on how many workers ran.
constexpr uint64_t kChunkTrials = 256;

struct ChunkAcc {
    std::vector<double> sum;
    std::vector<double> sumsq;
};

} // namespace

std::string SelectionCriterion::str() const {
    switch (kind) {
        case Kind::SumBound: return "sum-bound " + fmt_double(delta);
        case Kind::PerIndex: return "per-index " + fmt_double(delta);
        case Kind::FixedRate: return "fixed-rate " + std::to_string(rate_k);
    }
    return "";
}

SelectionCriterion SelectionCriterion::parse(const std::string& s) {
    std::istringstream in(s);
    std::string name;
    in >> name;
    SelectionCriterion c;
    if (name == "sum-bound") {
        c.kind = Kind::SumBound;
        if (!(in >> c.delta)) throw std::invalid_argument("sum-bound needs a threshold");
    } else if (name == "per-index") {
        c.kind = Kind::PerIndex;
        if (!(in >> c.delta)) throw std::invalid_argument("per-index needs a threshold");
    } else if (name == "fixed-rate") {
        c.kind = Kind::FixedRate;
        if (!(in >> c.rate_k)) throw std::invalid_argument("fixed-rate needs a symbol count");
    } else {
        throw std::invalid_argument("unknown selection criterion: " + s);
    }
    return c;
}

std::vector<uint32_t> PolarCode::frozen_set() const {
    std::vector<uint32_t> out;
    out.reserve(n - info_set.size());
    size_t pos = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (pos < info_set.size() && info_set[pos] == i)
            ++pos;
        else
            out.push_back(i);
    }
    return out;
}

double PolarCode::error_bound() const {
    double s = 0.0;
    for (uint32_t i : info_set) s += z.z[i];
    return (q - 1) * s;
}

uint64_t PolarCode::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mixin = [&h](uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mixin(q);
    mixin(n);
    for (uint32_t i : info_set) mixin(i);
    return h;
}

void PolarCode::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write code file: " + path);
    out << "polarq-code v1\n";
    out << "q " << q << "\n";
    out << "n " << n << "\n";
    out << "seed " << seed << "\n";
    out << "trials " << z.trials << "\n";
    out << "criterion " << criterion.str() << "\n";
    if (!model.empty()) out << "model " << model << "\n";
    out << "info " << info_set.size();
    for (uint32_t i : info_set) out << ' ' << i;
    out << "\n";
    for (size_t i = 0; i < n; ++i)
        out << "z " << i << ' ' << fmt_double(z.z[i]) << ' '
            << fmt_double(i < z.se.size() ? z.se[i] : 0.0) << "\n";
}

PolarCode PolarCode::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    PolarCode c;
    std::string line, tag;
    bool versioned = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> tag;
        if (tag == "polarq-code") {
            std::string ver;
            ls >> ver;
            if (ver != "v1") throw std::runtime_error("unsupported code file version");
            versioned = true;
        } else if (tag == "q") {
            ls >> c.q;
        } else if (tag == "n") {
            ls >> c.n;
            c.z.z.assign(c.n, 0.0);
            c.z.se.assign(c.n, 0.0);
        } else if (tag == "seed") {
            ls >> c.seed;
        } else if (tag == "trials") {
            ls >> c.z.trials;
        } else if (tag == "criterion") {
            std::string rest;
            std::getline(ls, rest);
            c.criterion = SelectionCriterion::parse(rest);
        } else if (tag == "model") {
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
            c.model = rest;
        } else if (tag == "info") {
            size_t k = 0;
            ls >> k;
            c.info_set.resize(k);
            for (size_t i = 0; i < k; ++i)
                if (!(ls >> c.info_set[i]))
                    throw std::runtime_error("code file: truncated info line");
        } else if (tag == "z") {
            size_t i;
            double zv, sev;
            if (!(ls >> i >> zv >> sev) || i >= c.n)
                throw std::runtime_error("code file: bad z line");
            c.z.z[i] = zv;
            c.z.se[i] = sev;
        } else {
            throw std::runtime_error("code file: unknown tag '" + tag + "'");
        }
    }
    if (!versioned || c.q == 0 || c.n == 0)
        throw std::runtime_error("code file: missing header fields");
    if (!std::is_sorted(c.info_set.begin(), c.info_set.end()))
        throw std::runtime_error("code file: info set not sorted");
    for (uint32_t i : c.info_set)
        if (i >= c.n) throw std::runtime_error("code file: info index out of range");
    return c;
}

SourceSampler::SourceSampler(JointSource model) : model_(std::move(model)) {
    llr_by_y_.reserve(model_.ysize);
    for (unsigned y = 0; y < model_.ysize; ++y)
        llr_by_y_.push_back(side_info_llr(model_, y));
}

void SourceSampler::sample(CounterRng& rng, size_t n, std::vector<Symbol>& x,
                           std::vector<LlrVector>& init) const {
    x.resize(n);
    init.resize(n);
    for (size_t i = 0; i < n; ++i) {
        unsigned y = 0;
        model_.sample(rng, x[i], y);
        init[i] = llr_by_y_[y];
    }
}

ZEstimate estimate_z_mc(const Field& f, const TrialSampler& sampler, size_t n,
                        uint64_t trials, uint64_t seed, unsigned workers) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (workers < 1) workers = 1;
    const unsigned q = f.q();

    const uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<ChunkAcc> acc(chunks);
    std::atomic<uint64_t> next_chunk{0};

    auto work = [&]() {
        ScDecoder dec(f, n);
        std::vector<Symbol> x, u;
        std::vector<LlrVector> init;
        std::vector<double> half(q);
        for (;;) {
            const uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            ChunkAcc& a = acc[c];
            a.sum.assign(n, 0.0);
            a.sumsq.assign(n, 0.0);
            const uint64_t t0 = c * kChunkTrials;
            const uint64_t t1 = std::min(trials, t0 + kChunkTrials);
            for (uint64_t t = t0; t < t1; ++t) {
                CounterRng rng(seed, t);
                sampler.sample(rng, n, x, init);
                u = x;
                polar_encode_inplace(f, u);
                dec.decode(init, FrozenPolicy::genie(u));
                for (size_t i = 0; i < n; ++i) {
                    const auto l = dec.top_llr(i);
                    // Per-trial statistic: the ratio Delta / L(beta)
                    // weighted by P(beta | y, u-past) and averaged over
                    // every beta in F_q collapses to the posterior pair
                    // sum (1/(q-1)) sum_{a != b} sqrt(P(a) P(b)), whose
                    // expectation over trials is exactly Z_i. With
                    // posteriors P(s) = e^{l_s} / sum e^{l} the pair sum
                    // is ((sum_s e^{l_s/2})^2 - sum_s e^{l_s}) /
                    // ((q-1) sum_s e^{l_s}); bounded in [0, 1].
                    half[0] = 0.0;
                    double m = 0.0;
                    for (unsigned s = 1; s < q; ++s) {
                        half[s] = 0.5 * l[s - 1];
                        m = std::max(m, half[s]);
                    }
                    double s1 = 0.0, s2 = 0.0;
                    for (unsigned s = 0; s < q; ++s) {
                        const double e = std::exp(half[s] - m);
                        s1 += e;
                        s2 += e * e;
                    }
                    const double diff = s1 * s1 - s2;
                    if (diff <= 0.0) continue;
                    const double v = diff / ((double(q) - 1.0) * s2);
                    a.sum[i] += v;
                    a.sumsq[i] += v * v;
                }
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    ZEstimate est;
    est.trials = trials;
    est.z.assign(n, 0.0);
    est.se.assign(n, 0.0);
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (uint64_t c = 0; c < chunks; ++c)
        for (size_t i = 0; i < n; ++i) {
            sum[i] += acc[c].sum[i];
            sumsq[i] += acc[c].sumsq[i];
        }
    const double tinv = 1.0 / static_cast<double>(trials);
    for (size_t i = 0; i < n; ++i) {
        const double mean = sum[i] * tinv;
        est.z[i] = mean;
        const double var = std::max(0.0, sumsq[i] * tinv - mean * mean);
        est.se[i] = std::sqrt(var * tinv);
    }
    return est;
}

std::vector<double> exact_z_all(const Field& f, const JointSource& model, size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    if (model.q != f.q()) throw std::invalid_argument("model alphabet does not match field");
    const unsigned q = f.q();
    const unsigned ys = model.ysize;

    long double work = 1.0L;
    for (size_t i = 0; i < n; ++i) work *= static_cast<long double>(q) * ys;
    work *= static_cast<long double>(n);
    if (work > 0x1p34L) throw std::invalid_argument("enumeration budget exceeded");

    size_t qn = 1;
    for (size_t i = 0; i < n; ++i) qn *= q;
    size_t ysn = 1;
    for (size_t i = 0; i < n; ++i) ysn *= ys;

    std::vector<double> z(n, 0.0);
    std::vector<double> tbl(qn);
    std::vector<Symbol> x(n), u(n);
    std::vector<unsigned> y(n);

    for (size_t ycode = 0; ycode < ysn; ++ycode) {
        size_t yc = ycode;
        for (size_t i = 0; i < n; ++i) {
            y[i] = static_cast<unsigned>(yc % ys);
            yc /= ys;
        }
        // joint table over u for this y, key = sum_i u_i q^{N-1-i}
        std::fill(tbl.begin(), tbl.end(), 0.0);
        for (size_t code = 0; code < qn; ++code) {
            size_t c = code;
            double p = 1.0;
            for (size_t i = 0; i < n; ++i) {
                x[i] = static_cast<Symbol>(c % q);
                c /= q;
                p *= model.joint(x[i], y[i]);
            }
            if (p == 0.0) continue;
            u = x;
            polar_encode_inplace(f, u);
            size_t key = 0;
            for (size_t i = 0; i < n; ++i) key = key * q + u[i];
            tbl[key] += p;
        }
        // peel the last coordinate off repeatedly: with k coordinates
        // left, the pair sums over the last one contribute to Z_{k-1}
        size_t prefixes = qn / q;
        for (size_t k = n; k >= 1; --k) {
            double zk = 0.0;
            for (size_t pfx = 0; pfx < prefixes; ++pfx) {
                const size_t base = pfx * q;
                double s1 = 0.0, s2 = 0.0;
                for (unsigned v = 0; v < q; ++v) {
                    s1 += std::sqrt(tbl[base + v]);
                    s2 += tbl[base + v];
                }
                zk += s1 * s1 - s2;
                tbl[pfx] = s2;  // marginalize in place
            }
            z[k - 1] += zk;
            prefixes /= q;
        }
    }
    for (double& v : z) v /= (q - 1);
    return z;
}

double exact_z(const Field& f, const JointSource& model, size_t n, size_t i) {
    if (i >= n) throw std::invalid_argument("index out of range");
    return exact_z_all(f, model, n)[i];
}

PolarCode select_info_set(const Field& f, ZEstimate z, SelectionCriterion crit) {
    const size_t n = z.z.size();
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");

    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&z](uint32_t a, uint32_t b) { return z.z[a] < z.z[b]; });

    std::vector<uint32_t> picked;
    switch (crit.kind) {
        case SelectionCriterion::Kind::SumBound: {
            double s = 0.0;
            for (uint32_t i : order) {
                if (s + z.z[i] > crit.delta) break;
                s += z.z[i];
                picked.push_back(i);
            }
            break;
        }
        case SelectionCriterion::Kind::PerIndex:
            for (uint32_t i : order) {
                if (!(z.z[i] < crit.delta)) break;
                picked.push_back(i);
            }
            break;
        case SelectionCriterion::Kind::FixedRate:
            if (crit.rate_k > n)
                throw std::invalid_argument("fixed-rate exceeds block length");
            picked.assign(order.begin(), order.begin() + crit.rate_k);
            break;
    }
    if (picked.empty())
        throw std::runtime_error("selection criterion admits no index (empty information set)");
    std::sort(picked.begin(), picked.end());

    PolarCode code;
    code.q = f.q();
    code.n = n;
    code.info_set = std::move(picked);
    code.z = std::move(z);
    code.criterion = crit;
    return code;
}

DegradationReport check_degradation_ordering(const Field& f, const DmcChannel& p2,
                                             const std::vector<double>& w,
                                             unsigned y1size, size_t n, double slack) {
    const DmcChannel p1 = degrade_channel(p2, w, y1size);
    DegradationReport rep;
    rep.z_degraded = exact_z_all(f, JointSource::from_dmc(p1), n);
    rep.z_better = exact_z_all(f, JointSource::from_dmc(p2), n);
    rep.ordering_holds = true;
    for (size_t i = 0; i < n; ++i) {
        const double viol = rep.z_better[i] - rep.z_degraded[i];
        rep.max_violation = std::max(rep.max_violation, viol);
        if (viol > slack) rep.ordering_holds = false;
    }
    return rep;
}

} // namespace polarq
