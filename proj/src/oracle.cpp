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

#include "polarq/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "polarq/transform.hpp"

namespace polarq::oracle {

FieldMatrix explicit_gn(const Field& f, size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    if (n > 64) throw std::invalid_argument("explicit matrix limited to N <= 64");
    FieldMatrix g;
    g.n = n;
    g.a.assign(n * n, 0);
    std::vector<Symbol> e(n, 0);
    for (size_t r = 0; r < n; ++r) {
        e.assign(n, 0);
        e[r] = 1;
        const std::vector<Symbol> row = polar_encode(f, e);
        for (size_t c = 0; c < n; ++c) g.a[r * n + c] = row[c];
    }
    return g;
}

FieldMatrix explicit_gn_inverse(const Field& f, size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    if (n > 64) throw std::invalid_argument("explicit matrix limited to N <= 64");
    FieldMatrix gi;
    gi.n = n;
    gi.a.assign(n * n, 0);
    std::vector<Symbol> e(n, 0);
    for (size_t r = 0; r < n; ++r) {
        e.assign(n, 0);
        e[r] = 1;
        const std::vector<Symbol> row = polar_decode_transform(f, e);
        for (size_t c = 0; c < n; ++c) gi.a[r * n + c] = row[c];
    }
    // contract check: G * G^{-1} = I
    const FieldMatrix g = explicit_gn(f, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            Symbol s = 0;
            for (size_t k = 0; k < n; ++k)
                s = f.add(s, f.mul(g.at(r, k), gi.at(k, c)));
            if (s != (r == c ? 1 : 0))
                throw std::logic_error("G_N * G_N^{-1} is not the identity");
        }
    return gi;
}

std::vector<Symbol> mat_vec(const Field& f, std::span<const Symbol> x,
                            const FieldMatrix& g) {
    if (x.size() != g.n) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<Symbol> out(g.n, 0);
    for (size_t c = 0; c < g.n; ++c) {
        Symbol s = 0;
        for (size_t r = 0; r < g.n; ++r) s = f.add(s, f.mul(x[r], g.at(r, c)));
        out[c] = s;
    }
    return out;
}

PosteriorTable::PosteriorTable(const Field& f, const JointSource& model,
                               std::span<const unsigned> y)
    : field_(&f), n_(y.size()) {
    const unsigned q = f.q();
    double total = 1.0;
    for (size_t i = 0; i < n_; ++i) total *= q;
    if (total > double{1 << 24}) throw std::invalid_argument("enumeration budget exceeded");
    const size_t count = static_cast<size_t>(total);
    table_.assign(count, 0.0);

    std::vector<Symbol> x(n_, 0);
    std::vector<Symbol> u(n_);
    for (size_t code = 0; code < count; ++code) {
        size_t c = code;
        double p = 1.0;
        for (size_t i = 0; i < n_; ++i) {
            x[i] = static_cast<Symbol>(c % q);
            c /= q;
            p *= model.joint(x[i], y[i]);
        }
        if (p == 0.0) continue;
        u = x;
        polar_encode_inplace(f, u);
        size_t key = 0;
        for (size_t i = 0; i < n_; ++i) key = key * q + u[i];
        table_[key] += p;
    }
}

std::vector<double> PosteriorTable::posterior(size_t i,
                                              std::span<const Symbol> u_prefix) const {
    const unsigned q = field_->q();
    if (u_prefix.size() < i) throw std::invalid_argument("posterior: prefix too short");
    size_t base = 0;
    for (size_t k = 0; k < i; ++k) base = base * q + u_prefix[k];
    size_t suffix = 1;
    for (size_t k = i + 1; k < n_; ++k) suffix *= q;
    std::vector<double> out(q, 0.0);
    double total = 0.0;
    for (unsigned v = 0; v < q; ++v) {
        const size_t lo = (base * q + v) * suffix;
        double s = 0.0;
        for (size_t k = 0; k < suffix; ++k) s += table_[lo + k];
        out[v] = s;
        total += s;
    }
    if (total <= 0.0) throw std::runtime_error("posterior: conditioning event has zero mass");
    for (double& v : out) v /= total;
    return out;
}

LlrVector PosteriorTable::llr(size_t i, std::span<const Symbol> u_prefix) const {
    const unsigned q = field_->q();
    const std::vector<double> p = posterior(i, u_prefix);
    LlrVector v(q);
    const double l0 = p[0] > 0.0 ? std::log(p[0]) : -2.0 * kLlrClamp;
    for (unsigned s = 1; s < q; ++s) {
        const double ls = p[s] > 0.0 ? std::log(p[s]) : -2.0 * kLlrClamp;
        v.set(static_cast<Symbol>(s), ls - l0);
    }
    return v;
}

namespace {

// f/g combine on scalar llrs, log P(1)/P(0) convention
double bin_f(double a, double b) {
    // P(u=1) = p_a(0)p_b(1) + p_a(1)p_b(0), so the ratio to u=0 is
    // (e^a + e^b) / (1 + e^{a+b})
    const double num = std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
    const double den = std::max(0.0, a + b) + std::log1p(std::exp(-std::abs(a + b)));
    return num - den;
}

double bin_g(double a, double b, uint8_t u_prev) {
    return b + (u_prev ? -a : a);
}

struct BinSc {
    size_t n;
    unsigned levels;
    std::vector<std::vector<double>> p;   // per level, one slot per branch
    std::vector<std::vector<uint8_t>> bs; // partial sums

    void calc(unsigned lv, size_t phase, size_t branch) {
        if (lv == 0) return;
        if (phase % 2 == 0) {
            calc(lv - 1, phase / 2, 2 * branch);
            calc(lv - 1, phase / 2, 2 * branch + 1);
            p[lv][branch] = bin_f(p[lv - 1][2 * branch], p[lv - 1][2 * branch + 1]);
        } else {
            p[lv][branch] =
                bin_g(p[lv - 1][2 * branch], p[lv - 1][2 * branch + 1], bs[lv][branch]);
        }
    }

    void update(unsigned lv, size_t phase, size_t branch, uint8_t bit) {
        if (phase % 2 == 0) {
            bs[lv][branch] = bit;
            return;
        }
        if (lv == 0) return;
        update(lv - 1, phase / 2, 2 * branch, bs[lv][branch] ^ bit);
        update(lv - 1, phase / 2, 2 * branch + 1, bit);
    }
};

} // namespace

BinaryScResult binary_reference_sc(const std::vector<double>& init,
                                   const std::vector<uint8_t>& is_frozen,
                                   const std::vector<uint8_t>& frozen_values) {
    const size_t n = init.size();
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    BinSc sc;
    sc.n = n;
    sc.levels = 0;
    while ((size_t{1} << sc.levels) < n) ++sc.levels;
    sc.p.resize(sc.levels + 1);
    sc.bs.resize(sc.levels + 1);
    for (unsigned lv = 0; lv <= sc.levels; ++lv) {
        sc.p[lv].assign(n >> lv, 0.0);
        sc.bs[lv].assign(n >> lv, 0);
    }
    sc.p[0] = init;

    BinaryScResult res;
    res.u.resize(n);
    std::vector<uint8_t> xsum(n, 0);
    for (size_t i = 0; i < n; ++i) {
        sc.calc(sc.levels, i, 0);
        uint8_t d;
        if (is_frozen[i])
            d = frozen_values[i];
        else
            d = sc.p[sc.levels][0] > 0.0 ? 1 : 0;
        res.u[i] = d;
        sc.update(sc.levels, i, 0, d);
    }
    res.x.assign(sc.bs[0].begin(), sc.bs[0].end());
    return res;
}

} // namespace polarq::oracle
