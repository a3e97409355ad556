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

#include "polarq/modem_awgn.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polarq/kernels.hpp"

namespace polarq {

namespace {

bool is_pow2_u(unsigned n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

double Constellation::es() const {
    double s = 0.0;
    for (const auto& p : points) s += std::norm(p);
    return s / points.size();
}

Constellation Constellation::normalized() const {
    const double e = es();
    if (e <= 0.0) throw std::runtime_error("constellation has zero energy");
    Constellation out = *this;
    const double scale = 1.0 / std::sqrt(e);
    for (auto& p : out.points) p *= scale;
    return out;
}

void Constellation::validate() const {
    if (q < 2 || points.size() != q)
        throw std::invalid_argument("constellation: point count mismatch");
    if (es() <= 0.0) throw std::invalid_argument("constellation: zero energy");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (std::abs(points[i] - points[j]) == 0.0)
                throw std::invalid_argument("constellation: duplicate points");
}

Constellation Constellation::make_pam(unsigned q) {
    Constellation c;
    c.q = q;
    c.points.resize(q);
    if (is_pow2_u(q)) {
        // {2i - (q+1)}, i = 1..q: odd integers, spacing 2
        c.kind = Kind::PamPow2;
        for (unsigned i = 0; i < q; ++i)
            c.points[i] = {static_cast<double>(2.0 * (i + 1)) - (q + 1.0), 0.0};
    } else if (is_prime(q)) {
        // {i - floor(q/2)}, i = 0..q-1: unit spacing, centered
        c.kind = Kind::PamPrime;
        for (unsigned i = 0; i < q; ++i)
            c.points[i] = {static_cast<double>(i) - static_cast<double>(q / 2), 0.0};
    } else {
        throw std::invalid_argument("PAM size must be prime or a power of two");
    }
    c.validate();
    return c;
}

Constellation Constellation::make_rect_qam(unsigned q_axis) {
    const Constellation pam = make_pam(q_axis);
    Constellation c;
    c.q = q_axis * q_axis;
    c.kind = Kind::RectQam;
    c.points.resize(c.q);
    for (unsigned j = 0; j < c.q; ++j)
        c.points[j] = {pam.points[j % q_axis].real(), pam.points[j / q_axis].real()};
    c.validate();
    return c;
}

Constellation Constellation::load_circular(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open packing file: " + path);
    Constellation c;
    c.kind = Kind::Circular;
    double radius = -1.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (line.rfind("radius", 0) == 0) {
            std::string tag;
            ls >> tag >> radius;
            if (!ls || radius <= 0.0)
                throw std::runtime_error("packing file: bad radius line");
            continue;
        }
        double x, y;
        if (!(ls >> x >> y)) throw std::runtime_error("packing file: bad point line: " + line);
        c.points.emplace_back(x, y);
    }
    c.q = static_cast<unsigned>(c.points.size());
    if (c.q < 2) throw std::runtime_error("packing file: need at least 2 points");
    Field probe(c.q);  // throws unless q is a supported field order
    (void)probe;
    c.validate();

    double dmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < c.points.size(); ++i)
        for (size_t j = i + 1; j < c.points.size(); ++j)
            dmin = std::min(dmin, std::abs(c.points[i] - c.points[j]));
    if (radius > 0.0 && std::abs(dmin - 2.0 * radius) > 1e-9)
        throw std::runtime_error("packing file: declared radius does not match point spacing");

    std::complex<double> mean{0.0, 0.0};
    for (const auto& p : c.points) mean += p;
    mean /= static_cast<double>(c.q);
    for (auto& p : c.points) p -= mean;
    return c.normalized();
}

NoiseModel NoiseModel::from_snr_db(double snr_db, double es, bool real_only) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    NoiseModel nm;
    nm.sigma2 = real_only ? es / snr : es / (2.0 * snr);
    return nm;
}

double NoiseModel::snr_db(double es, bool real_only) const {
    const double ez2 = real_only ? sigma2 : 2.0 * sigma2;
    return 10.0 * std::log10(es / ez2);
}

std::vector<std::complex<double>> transmit(const Constellation& c,
                                           const std::vector<Symbol>& x,
                                           const NoiseModel& nm, uint64_t seed,
                                           uint64_t stream, bool real_only) {
    if (nm.sigma2 <= 0.0) throw std::invalid_argument("noise variance must be positive");
    const double sigma = std::sqrt(nm.sigma2);
    CounterRng rng(seed, stream);
    std::vector<std::complex<double>> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= c.q) throw std::invalid_argument("symbol outside constellation");
        double g0, g1;
        rng.next_gauss_pair(g0, g1);
        const auto t = c.points[x[i]];
        y[i] = real_only ? std::complex<double>(t.real() + sigma * g0, 0.0)
                         : t + std::complex<double>(sigma * g0, sigma * g1);
    }
    return y;
}

AwgnLlr::AwgnLlr(const Constellation& c, const NoiseModel& nm, bool real_only)
    : q_(c.q) {
    if (nm.sigma2 <= 0.0) throw std::invalid_argument("noise variance must be positive");
    a_.resize(q_ - 1);
    b_.resize(q_ - 1);
    c_.resize(q_ - 1);
    d_.resize(q_ - 1);
    const auto t0 = c.points[0];
    for (unsigned k = 1; k < q_; ++k) {
        const auto tk = c.points[k];
        a_[k - 1] = (tk.real() - t0.real()) / nm.sigma2;
        c_[k - 1] = 0.5 * (tk.real() + t0.real());
        if (real_only) {
            b_[k - 1] = 0.0;
            d_[k - 1] = 0.0;
        } else {
            b_[k - 1] = (tk.imag() - t0.imag()) / nm.sigma2;
            d_[k - 1] = 0.5 * (tk.imag() + t0.imag());
        }
    }
}

LlrVector AwgnLlr::operator()(std::complex<double> y) const {
    LlrVector v(q_);
    kernels::active().awgn_llr(a_.data(), b_.data(), c_.data(), d_.data(), y.real(),
                               y.imag(), v.l.data(), q_ - 1);
    clamp_llr_vector(v.l.data(), q_ - 1);
    return v;
}

void AwgnLlr::fill(const std::vector<std::complex<double>>& y,
                   std::vector<LlrVector>& out) const {
    out.resize(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = operator()(y[i]);
}

AwgnSampler::AwgnSampler(Constellation c, NoiseModel nm, bool real_only)
    : c_(std::move(c)), nm_(nm), real_only_(real_only),
      sigma_(std::sqrt(nm.sigma2)), llr_(c_, nm, real_only) {
    c_.validate();
}

void AwgnSampler::sample(CounterRng& rng, size_t n, std::vector<Symbol>& x,
                         std::vector<LlrVector>& init) const {
    x.resize(n);
    init.resize(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = static_cast<Symbol>(rng.next_below(c_.q));
        double g0, g1;
        rng.next_gauss_pair(g0, g1);
        const auto t = c_.points[x[i]];
        const std::complex<double> y =
            real_only_ ? std::complex<double>(t.real() + sigma_ * g0, 0.0)
                       : t + std::complex<double>(sigma_ * g0, sigma_ * g1);
        init[i] = llr_(y);
    }
}

} // namespace polarq
