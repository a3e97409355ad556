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

#include "polarq/joint_source.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polarq {

namespace {

void check_prob_row(const double* row, size_t n, double tol, const char* what) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (row[i] < -1e-15) throw std::invalid_argument(std::string(what) + ": negative entry");
        s += row[i];
    }
    if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
}

// dense solve A x = b via partial-pivot elimination; returns false if singular
bool solve_dense(std::vector<double> a, std::vector<double> b, size_t n,
                 std::vector<double>& x) {
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-12) return false;
        if (piv != col) {
            for (size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (size_t r = col + 1; r < n; ++r) {
            const double m = a[r * n + col] / a[col * n + col];
            for (size_t c = col; c < n; ++c) a[r * n + c] -= m * a[col * n + c];
            b[r] -= m * b[col];
        }
    }
    x.assign(n, 0.0);
    for (size_t r = n; r-- > 0;) {
        double s = b[r];
        for (size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return true;
}

} // namespace

void DmcChannel::validate() const {
    if (p.size() != static_cast<size_t>(q) * ysize)
        throw std::invalid_argument("dmc: table shape mismatch");
    for (unsigned x = 0; x < q; ++x)
        check_prob_row(p.data() + x * ysize, ysize, 1e-9, "dmc");
}

DmcChannel DmcChannel::qsc(unsigned q, double eps) {
    DmcChannel ch;
    ch.q = q;
    ch.ysize = q;
    ch.p.assign(static_cast<size_t>(q) * q, eps / (q - 1));
    for (unsigned x = 0; x < q; ++x) ch.p[x * q + x] = 1.0 - eps;
    return ch;
}

DmcChannel degrade_channel(const DmcChannel& p2, const std::vector<double>& w,
                           unsigned y1size) {
    if (w.size() != static_cast<size_t>(p2.ysize) * y1size)
        throw std::invalid_argument("degrade_channel: w shape mismatch");
    for (unsigned y2 = 0; y2 < p2.ysize; ++y2)
        check_prob_row(w.data() + y2 * y1size, y1size, 1e-9, "degrade_channel w");
    DmcChannel p1;
    p1.q = p2.q;
    p1.ysize = y1size;
    p1.p.assign(static_cast<size_t>(p2.q) * y1size, 0.0);
    for (unsigned x = 0; x < p2.q; ++x)
        for (unsigned y2 = 0; y2 < p2.ysize; ++y2)
            for (unsigned y1 = 0; y1 < y1size; ++y1)
                p1.p[x * y1size + y1] += p2.at(x, y2) * w[y2 * y1size + y1];
    return p1;
}

double JointSource::cond_entropy_bits() const {
    double h = 0.0;
    for (unsigned y = 0; y < ysize; ++y)
        for (unsigned x = 0; x < q; ++x) {
            const double pxy = cond_px(x, y);
            if (pxy > 0.0) h -= py[y] * pxy * std::log2(pxy);
        }
    return h;
}

void JointSource::validate(double tol) const {
    if (px.size() != q || px_given_y.size() != static_cast<size_t>(q) * ysize ||
        py.size() != ysize)
        throw std::invalid_argument("joint source: shape mismatch");
    check_prob_row(px.data(), q, tol, "px");
    check_prob_row(py.data(), ysize, tol, "py");
    for (unsigned y = 0; y < ysize; ++y)
        check_prob_row(px_given_y.data() + y * q, q, tol, "px_given_y");
}

double JointSource::derive_py() {
    // P_X(x) = sum_y P(x|y) P_Y(y): square exact solve when possible,
    // normal equations otherwise; the source tables are rounded, so land
    // on the simplex by clamping and renormalizing.
    std::vector<double> sol;
    bool ok = false;
    if (ysize == q) {
        std::vector<double> a(static_cast<size_t>(q) * q);
        for (unsigned x = 0; x < q; ++x)
            for (unsigned y = 0; y < ysize; ++y) a[x * ysize + y] = cond_px(x, y);
        ok = solve_dense(a, px, q, sol);
    }
    if (!ok) {
        const size_t n = ysize;
        std::vector<double> ata(n * n, 0.0), atb(n, 0.0);
        for (unsigned y1 = 0; y1 < n; ++y1) {
            for (unsigned y2 = 0; y2 < n; ++y2)
                for (unsigned x = 0; x < q; ++x)
                    ata[y1 * n + y2] += cond_px(x, y1) * cond_px(x, y2);
            for (unsigned x = 0; x < q; ++x) atb[y1] += cond_px(x, y1) * px[x];
        }
        if (!solve_dense(ata, atb, n, sol))
            throw std::runtime_error("derive_py: conditional matrix is degenerate");
    }
    double s = 0.0;
    for (double& v : sol) {
        if (v < 0.0) v = 0.0;
        s += v;
    }
    if (s <= 0.0) throw std::runtime_error("derive_py: no feasible marginal");
    for (double& v : sol) v /= s;
    py = sol;
    cdf_.clear();

    double resid = 0.0;
    for (unsigned x = 0; x < q; ++x) {
        double m = 0.0;
        for (unsigned y = 0; y < ysize; ++y) m += joint(x, y);
        resid = std::max(resid, std::abs(m - px[x]));
    }
    return resid;
}

void JointSource::build_cdf() const {
    cdf_.resize(static_cast<size_t>(q) * ysize);
    double acc = 0.0;
    for (unsigned y = 0; y < ysize; ++y)
        for (unsigned x = 0; x < q; ++x) {
            acc += joint(x, y);
            cdf_[y * q + x] = acc;
        }
    cdf_.back() = 1.0;
}

void JointSource::sample(CounterRng& rng, Symbol& x, unsigned& y) const {
    if (cdf_.empty()) build_cdf();
    const double u = rng.next_double();
    size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (cdf_[mid] <= u)
            lo = mid + 1;
        else
            hi = mid;
    }
    x = static_cast<Symbol>(lo % q);
    y = static_cast<unsigned>(lo / q);
}

JointSource JointSource::from_dmc(const DmcChannel& ch) {
    JointSource s;
    s.q = ch.q;
    s.ysize = ch.ysize;
    s.px.assign(ch.q, 1.0 / ch.q);
    // P(y) = sum_x P(y|x)/q, P(x|y) = P(y|x)/(q P(y))
    s.py.assign(ch.ysize, 0.0);
    for (unsigned y = 0; y < ch.ysize; ++y)
        for (unsigned x = 0; x < ch.q; ++x) s.py[y] += ch.at(x, y) / ch.q;
    s.px_given_y.assign(static_cast<size_t>(ch.q) * ch.ysize, 0.0);
    for (unsigned y = 0; y < ch.ysize; ++y)
        for (unsigned x = 0; x < ch.q; ++x)
            s.px_given_y[y * ch.q + x] = s.py[y] > 0.0 ? ch.at(x, y) / (ch.q * s.py[y]) : 0.0;
    return s;
}

JointSource JointSource::perfect_side_info(unsigned q, const std::vector<double>& px) {
    JointSource s;
    s.q = q;
    s.ysize = q;
    s.px = px;
    s.py = px;
    s.px_given_y.assign(static_cast<size_t>(q) * q, 0.0);
    for (unsigned y = 0; y < q; ++y) s.px_given_y[y * q + y] = 1.0;
    return s;
}

JointSource JointSource::table_source() {
    JointSource s;
    s.q = 5;
    s.ysize = 5;
    s.px = {0.300, 0.200, 0.300, 0.100, 0.100};
    // columns y = 0..4 of P(x|y), stored row-per-y
    const double cond[5][5] = {
        // x:   0      1      2      3      4        for each y
        {0.522, 0.261, 0.131, 0.043, 0.043},  // y=0
        {0.261, 0.348, 0.261, 0.087, 0.043},  // y=1
        {0.136, 0.092, 0.682, 0.045, 0.045},  // y=2
        {0.231, 0.154, 0.231, 0.307, 0.077},  // y=3
        {0.316, 0.105, 0.158, 0.105, 0.316},  // y=4
    };
    s.px_given_y.resize(25);
    for (unsigned y = 0; y < 5; ++y)
        for (unsigned x = 0; x < 5; ++x) s.px_given_y[y * 5 + x] = cond[y][x];
    s.derive_py();
    return s;
}

JointSource JointSource::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open source file: " + path);
    std::string line, tag;
    JointSource s;
    bool have_py = false;
    std::vector<std::vector<double>> cond_rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> tag;
        if (tag == "polarq-source") {
            std::string ver;
            ls >> ver;
            if (ver != "v1") throw std::runtime_error("unsupported source file version");
        } else if (tag == "q") {
            ls >> s.q;
        } else if (tag == "ysize") {
            ls >> s.ysize;
        } else if (tag == "px") {
            double v;
            while (ls >> v) s.px.push_back(v);
        } else if (tag == "py") {
            double v;
            while (ls >> v) s.py.push_back(v);
            have_py = true;
        } else if (tag == "cond") {
            // one line per y: P(x|y) for x = 0..q-1
            std::vector<double> row;
            double v;
            while (ls >> v) row.push_back(v);
            cond_rows.push_back(std::move(row));
        } else {
            throw std::runtime_error("source file: unknown tag '" + tag + "'");
        }
    }
    if (s.q == 0 || s.ysize == 0) throw std::runtime_error("source file: missing q/ysize");
    if (cond_rows.size() != s.ysize) throw std::runtime_error("source file: cond row count");
    for (const auto& row : cond_rows) {
        if (row.size() != s.q) throw std::runtime_error("source file: cond row length");
        s.px_given_y.insert(s.px_given_y.end(), row.begin(), row.end());
    }
    if (!have_py) s.derive_py();
    s.validate(1e-3);
    return s;
}

void JointSource::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write source file: " + path);
    out.precision(17);
    out << "polarq-source v1\n";
    out << "q " << q << "\nysize " << ysize << "\n";
    out << "px";
    for (double v : px) out << ' ' << v;
    out << "\n";
    for (unsigned y = 0; y < ysize; ++y) {
        out << "cond";
        for (unsigned x = 0; x < q; ++x) out << ' ' << cond_px(x, y);
        out << "\n";
    }
    out << "py";
    for (double v : py) out << ' ' << v;
    out << "\n";
}

} // namespace polarq
