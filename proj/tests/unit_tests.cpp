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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polarq/channel_codec.hpp"
#include "polarq/cli_commands.hpp"
#include "polarq/construction.hpp"
#include "polarq/field.hpp"
#include "polarq/io.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/kernels.hpp"
#include "polarq/llr.hpp"
#include "polarq/modem_awgn.hpp"
#include "polarq/oracle.hpp"
#include "polarq/rng.hpp"
#include "polarq/sc_decoder.hpp"
#include "polarq/source_codec.hpp"
#include "polarq/transform.hpp"

using namespace polarq;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/polarq_test_" + name; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    REQUIRE(out.good());
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("field axioms on random triples") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 67u,
                       81u, 128u}) {
        const Field f(q);
        CHECK(f.q() == q);
        // prime fields fix alpha = 1; extension fields need a primitive alpha
        if (f.m() > 1)
            CHECK(f.is_primitive(f.alpha()));
        else
            CHECK(f.alpha() == 1);
        CounterRng rng(1, q);
        for (int t = 0; t < 200; ++t) {
            const Symbol a = static_cast<Symbol>(rng.next_below(q));
            const Symbol b = static_cast<Symbol>(rng.next_below(q));
            const Symbol c = static_cast<Symbol>(rng.next_below(q));
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.sub(f.add(a, b), b) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.add(a, b) == f.add_direct(a, b));
            CHECK(f.mul(a, b) == f.mul_direct(a, b));
        }
    }
}

TEST_CASE("field canonical choices") {
    for (unsigned q : {2u, 3u, 5u, 7u, 67u}) CHECK(Field(q).alpha() == 1);
    const Field f4(4);
    CHECK(f4.p() == 2);
    CHECK(f4.m() == 2);
    CHECK(f4.alpha() == 2);
    CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});  // x^2 + x + 1
    CHECK_THROWS(Field(6));
    CHECK_THROWS(Field(1));
}

TEST_CASE("counter rng is a pure function of (seed, stream, counter)") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());

    CHECK(stream_symbol(5, 100, 13) == stream_symbol(5, 100, 13));
    for (unsigned q : {2u, 5u, 67u})
        for (uint64_t k = 0; k < 500; ++k) CHECK(stream_symbol(9, k, q) < q);

    CounterRng g(3, 0);
    double m1 = 0.0, m2 = 0.0;
    const int pairs = 20000;
    for (int i = 0; i < pairs; ++i) {
        double g0, g1;
        g.next_gauss_pair(g0, g1);
        m1 += g0 + g1;
        m2 += g0 * g0 + g1 * g1;
    }
    CHECK(std::abs(m1 / (2 * pairs)) < 0.02);
    CHECK(std::abs(m2 / (2 * pairs) - 1.0) < 0.03);
}

TEST_CASE("llr vector detection rule") {
    LlrVector v(4);
    CHECK(v.detect() == 0);  // all-zero tie goes to the reference symbol
    v.set(2, 1.5);
    v.set(3, 1.5);
    CHECK(v.detect() == 2);  // tie among positives goes to the lowest symbol
    v.set(1, 2.0);
    CHECK(v.detect() == 1);
    v = LlrVector(4);
    v.set(1, -3.0);
    v.set(2, -1.0);
    v.set(3, -2.0);
    CHECK(v.detect() == 0);  // nothing beats the implicit zero
    v.set(3, 1e9);
    CHECK(v.comp(3) == kLlrClamp);  // set() clamps
}

TEST_CASE("bit reversal is an involution") {
    for (size_t n : {size_t{2}, size_t{8}, size_t{64}, size_t{1024}}) {
        const auto rev = bit_reversal(n);
        for (size_t i = 0; i < n; ++i) {
            CHECK(rev[rev[i]] == i);
            CHECK(rev[i] < n);
        }
    }
    CHECK_THROWS(bit_reversal(12));
}

TEST_CASE("two-symbol transform kernel over F_3") {
    const Field f(3);
    // alpha = 1: (x0, x1) -> (x0 + x1, x1)
    CHECK(polar_encode(f, {1, 2}) == std::vector<Symbol>{0, 2});
    CHECK(polar_decode_transform(f, {0, 2}) == std::vector<Symbol>{1, 2});
}

TEST_CASE("transform agrees with the explicit matrix") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const Field f(q);
        for (size_t n : {size_t{2}, size_t{4}, size_t{8}, size_t{16}}) {
            const auto g = oracle::explicit_gn(f, n);
            const auto gi = oracle::explicit_gn_inverse(f, n);
            CounterRng rng(11, q * 1000 + n);
            for (int t = 0; t < 20; ++t) {
                std::vector<Symbol> x(n);
                for (auto& s : x) s = static_cast<Symbol>(rng.next_below(q));
                const auto u = polar_encode(f, x);
                CHECK(u == oracle::mat_vec(f, x, g));
                CHECK(polar_decode_transform(f, u) == x);
                CHECK(oracle::mat_vec(f, u, gi) == x);
            }
        }
    }
}

TEST_CASE("transform is linear") {
    const Field f(8);
    const size_t n = 64;
    CounterRng rng(13, 0);
    std::vector<Symbol> a(n), b(n), sum(n);
    for (size_t i = 0; i < n; ++i) {
        a[i] = static_cast<Symbol>(rng.next_below(8));
        b[i] = static_cast<Symbol>(rng.next_below(8));
        sum[i] = f.add(a[i], b[i]);
    }
    const auto ea = polar_encode(f, a);
    const auto eb = polar_encode(f, b);
    const auto es = polar_encode(f, sum);
    for (size_t i = 0; i < n; ++i) CHECK(es[i] == f.add(ea[i], eb[i]));
}

TEST_CASE("kernel variants are equivalent") {
    const auto variants = kernels::all_available();
    REQUIRE(!variants.empty());
    const auto& ref = kernels::scalar();
    CounterRng rng(17, 0);
    for (const auto* v : variants) {
        for (unsigned q : {2u, 3u, 5u, 8u, 16u, 67u}) {
            for (int t = 0; t < 300; ++t) {
                std::vector<double> left(q), right(q), a(q), b(q), c(q), d(q);
                std::vector<int32_t> idx(q);
                for (unsigned k = 0; k < q; ++k) {
                    left[k] = 600.0 * rng.next_double() - 300.0;
                    right[k] = 600.0 * rng.next_double() - 300.0;
                    idx[k] = static_cast<int32_t>(rng.next_below(q));
                    a[k] = 4.0 * rng.next_double() - 2.0;
                    b[k] = 4.0 * rng.next_double() - 2.0;
                    c[k] = 4.0 * rng.next_double() - 2.0;
                    d[k] = 4.0 * rng.next_double() - 2.0;
                }
                const double r0 = ref.gather_lse(left.data(), idx.data(), right.data(), q);
                const double r1 = v->gather_lse(left.data(), idx.data(), right.data(), q);
                CHECK(std::abs(r0 - r1) <= 1e-12 * std::max(1.0, std::abs(r0)));

                std::vector<double> o0(q), o1(q);
                ref.even_combine(left.data(), idx.data(), left[0], right.data(),
                                 o0.data(), q);
                v->even_combine(left.data(), idx.data(), left[0], right.data(),
                                o1.data(), q);
                CHECK(o0 == o1);  // bit-identical by design

                const double yre = rng.next_double(), yim = rng.next_double();
                ref.awgn_llr(a.data(), b.data(), c.data(), d.data(), yre, yim,
                             o0.data(), q);
                v->awgn_llr(a.data(), b.data(), c.data(), d.data(), yre, yim,
                            o1.data(), q);
                CHECK(o0 == o1);
            }
        }
    }
}

TEST_CASE("kernel selection override") {
    const char* before = kernels::active().name;
    CHECK(kernels::set_active("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::set_active("not-a-kernel"));
    CHECK(kernels::set_active(before));
}

TEST_CASE("decoder matches the enumerated posterior at small sizes") {
    for (unsigned q : {2u, 3u, 5u}) {
        const Field f(q);
        for (size_t n : {size_t{2}, size_t{4}}) {
            ScDecoder dec(f, n);
            CounterRng rng(19, q * 100 + n);
            const JointSource m = JointSource::from_dmc(DmcChannel::qsc(q, 0.15));
            for (int t = 0; t < 25; ++t) {
                std::vector<unsigned> y(n);
                std::vector<Symbol> u(n);
                std::vector<LlrVector> init(n);
                for (size_t i = 0; i < n; ++i) {
                    y[i] = rng.next_below(q);
                    u[i] = static_cast<Symbol>(rng.next_below(q));
                    init[i] = side_info_llr(m, y[i]);
                }
                const oracle::PosteriorTable pt(f, m, y);
                dec.decode(init, FrozenPolicy::genie(u));
                for (size_t i = 0; i < n; ++i) {
                    const LlrVector ref = pt.llr(i, std::span<const Symbol>(u.data(), i));
                    const auto got = dec.top_llr(i);
                    for (unsigned k = 0; k + 1 < q; ++k)
                        CHECK(got[k] == doctest::Approx(ref.l[k]).epsilon(1e-10));
                }
            }
        }
    }
}

TEST_CASE("decoder output vectors are consistent") {
    const Field f(5);
    const size_t n = 16;
    ScDecoder dec(f, n);
    CounterRng rng(23, 0);
    std::vector<LlrVector> init(n, LlrVector(5));
    for (auto& v : init)
        for (auto& x : v.l) x = 6.0 * rng.next_double() - 3.0;
    FrozenPolicy none;
    none.is_frozen.assign(n, 0);
    const auto res = dec.decode(init, none);
    CHECK(polar_encode(f, res.x) == res.u);  // x is the inverse transform of u
}

TEST_CASE("joint source models") {
    const DmcChannel ch = DmcChannel::qsc(3, 0.2);
    ch.validate();
    CHECK(ch.at(0, 0) == doctest::Approx(0.8));
    CHECK(ch.at(0, 1) == doctest::Approx(0.1));

    const JointSource m = JointSource::table_source();
    CHECK(m.q == 5);
    CHECK(std::abs(m.cond_entropy_bits() - 1.90061) < 0.02);

    // re-deriving P_Y from (P_X, P(X|Y)) reproduces the stored marginal
    JointSource m2 = m;
    std::fill(m2.py.begin(), m2.py.end(), 1.0 / m2.ysize);
    CHECK(m2.derive_py() < 1e-6);
    for (unsigned y = 0; y < m.ysize; ++y)
        CHECK(m2.py[y] == doctest::Approx(m.py[y]).epsilon(1e-6));

    const JointSource psi = JointSource::perfect_side_info(4, {0.25, 0.25, 0.25, 0.25});
    CHECK(psi.cond_entropy_bits() == doctest::Approx(0.0).epsilon(1e-12));

    const std::string path = tmp_path("model.txt");
    m.save(path);
    const JointSource back = JointSource::load(path);
    CHECK(back.q == m.q);
    CHECK(back.ysize == m.ysize);
    for (size_t i = 0; i < m.px_given_y.size(); ++i)
        CHECK(back.px_given_y[i] == doctest::Approx(m.px_given_y[i]).epsilon(1e-12));
}

TEST_CASE("degradation helper composes channels") {
    const DmcChannel p2 = DmcChannel::qsc(3, 0.1);
    const DmcChannel w = DmcChannel::qsc(3, 0.2);
    const DmcChannel p1 = degrade_channel(p2, w.p, 3);
    p1.validate();
    // two symmetric channels compose into a symmetric channel
    for (unsigned x = 0; x < 3; ++x)
        CHECK(p1.at(x, x) == doctest::Approx(p1.at(0, 0)).epsilon(1e-12));
}

TEST_CASE("exact Z of an uninformative channel is 1") {
    const Field f(3);
    // eps = (q-1)/q makes P(y|x) uniform and Y independent of X
    const JointSource m = JointSource::from_dmc(DmcChannel::qsc(3, 2.0 / 3.0));
    for (size_t n : {size_t{1}, size_t{2}}) {
        for (double z : exact_z_all(f, m, n)) CHECK(z == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("monte-carlo Z agrees with exact Z") {
    const Field f(3);
    const JointSource m = JointSource::from_dmc(DmcChannel::qsc(3, 0.1));
    const size_t n = 4;
    const auto exact = exact_z_all(f, m, n);
    const SourceSampler sampler(m);
    const ZEstimate mc = estimate_z_mc(f, sampler, n, 4096, 31);
    for (size_t i = 0; i < n; ++i) {
        CHECK(std::abs(mc.z[i] - exact[i]) <= 5.0 * mc.se[i] + 1e-3);
        CHECK(mc.z[i] >= 0.0);
    }
}

TEST_CASE("construction is deterministic across worker counts") {
    const Field f(5);
    const SourceSampler sampler(JointSource::table_source());
    const ZEstimate a = estimate_z_mc(f, sampler, 8, 700, 77, 1);
    const ZEstimate b = estimate_z_mc(f, sampler, 8, 700, 77, 8);
    CHECK(a.z == b.z);
    CHECK(a.se == b.se);
}

TEST_CASE("selection criteria") {
    const Field f(3);
    ZEstimate z;
    z.z = {0.5, 1e-6, 0.2, 1e-5};
    z.se.assign(4, 0.0);

    SelectionCriterion fr;
    fr.kind = SelectionCriterion::Kind::FixedRate;
    fr.rate_k = 2;
    CHECK(select_info_set(f, z, fr).info_set == std::vector<uint32_t>{1, 3});

    SelectionCriterion pi;
    pi.kind = SelectionCriterion::Kind::PerIndex;
    pi.delta = 1e-4;
    CHECK(select_info_set(f, z, pi).info_set == std::vector<uint32_t>{1, 3});

    SelectionCriterion sb;
    sb.kind = SelectionCriterion::Kind::SumBound;
    sb.delta = 2e-5;
    const PolarCode code = select_info_set(f, z, sb);
    CHECK(code.info_set == std::vector<uint32_t>{1, 3});
    CHECK(code.error_bound() == doctest::Approx(2.0 * (1e-6 + 1e-5)));
    CHECK(code.rate_channel() == doctest::Approx(0.5));

    sb.delta = 1e-7;  // nothing qualifies
    CHECK_THROWS_AS(select_info_set(f, z, sb), std::runtime_error);

    CHECK(SelectionCriterion::parse("sum-bound 0.0001").str() == "sum-bound 0.0001");
    CHECK(SelectionCriterion::parse("fixed-rate 12").rate_k == 12);
    CHECK_THROWS(SelectionCriterion::parse("bogus 1"));
}

TEST_CASE("code files reload bit-exactly") {
    const Field f(5);
    ZEstimate z;
    CounterRng rng(37, 0);
    z.z.resize(16);
    z.se.resize(16);
    for (size_t i = 0; i < 16; ++i) {
        z.z[i] = rng.next_double();
        z.se[i] = 0.01 * rng.next_double();
    }
    z.trials = 1234;
    SelectionCriterion fr;
    fr.kind = SelectionCriterion::Kind::FixedRate;
    fr.rate_k = 9;
    PolarCode code = select_info_set(f, z, fr);
    code.seed = 99;
    code.model = "qsc:5,0.1";

    const std::string p1 = tmp_path("code_a.txt"), p2 = tmp_path("code_b.txt");
    code.save(p1);
    const PolarCode back = PolarCode::load(p1);
    back.save(p2);
    CHECK(read_text(p1) == read_text(p2));
    CHECK(back.z.z == code.z.z);
    CHECK(back.info_set == code.info_set);
    CHECK(back.hash() == code.hash());

    PolarCode other = back;
    other.info_set[0] ^= 1;
    CHECK(other.hash() != code.hash());
}

TEST_CASE("pam and rectangular qam layouts") {
    const Constellation p4 = Constellation::make_pam(4);
    REQUIRE(p4.points.size() == 4);
    for (unsigned i = 0; i < 4; ++i)
        CHECK(p4.points[i].real() == doctest::Approx(-3.0 + 2.0 * i));
    CHECK(p4.es() == doctest::Approx(5.0));

    const Constellation p5 = Constellation::make_pam(5);
    for (unsigned i = 0; i < 5; ++i)
        CHECK(p5.points[i].real() == doctest::Approx(static_cast<double>(i) - 2.0));

    const Constellation p2 = Constellation::make_pam(2);
    CHECK(p2.points[0].real() == doctest::Approx(-1.0));
    CHECK(p2.points[1].real() == doctest::Approx(1.0));

    CHECK_THROWS(Constellation::make_pam(6));

    const Constellation qam = Constellation::make_rect_qam(4);
    CHECK(qam.q == 16);
    // index j splits as (j mod 4, j div 4) onto (re, im)
    CHECK(qam.points[1].real() == doctest::Approx(-1.0));
    CHECK(qam.points[1].imag() == doctest::Approx(-3.0));
    CHECK(qam.points[4].real() == doctest::Approx(-3.0));
    CHECK(qam.points[4].imag() == doctest::Approx(-1.0));
    CHECK(qam.normalized().es() == doctest::Approx(1.0));
}

TEST_CASE("circular packing loader") {
    const std::string path = tmp_path("pack4.txt");
    write_text(path,
               "# four centers\n"
               "radius 0.5\n"
               "0.5 0.5\n-0.5 0.5\n-0.5 -0.5\n0.5 -0.5\n");
    const Constellation c = Constellation::load_circular(path);
    CHECK(c.q == 4);
    CHECK(c.es() == doctest::Approx(1.0));  // centered and scaled to unit energy

    write_text(path,
               "radius 0.9\n"  // inconsistent with the point spacing
               "0.5 0.5\n-0.5 0.5\n-0.5 -0.5\n0.5 -0.5\n");
    CHECK_THROWS(Constellation::load_circular(path));
}

TEST_CASE("awgn llr front end matches the gaussian density ratio") {
    for (bool real_only : {false, true}) {
        const Constellation c = Constellation::make_rect_qam(3).normalized();
        const NoiseModel nm = NoiseModel::from_snr_db(8.0, c.es(), real_only);
        CHECK(nm.snr_db(c.es(), real_only) == doctest::Approx(8.0));
        const AwgnLlr llr(c, nm, real_only);
        CounterRng rng(41, real_only);
        for (int t = 0; t < 200; ++t) {
            const std::complex<double> y(3.0 * rng.next_double() - 1.5,
                                         real_only ? 0.0 : 3.0 * rng.next_double() - 1.5);
            const LlrVector v = llr(y);
            auto logp = [&](std::complex<double> tx) {
                const double dre = y.real() - tx.real();
                const double dim = real_only ? 0.0 : y.imag() - tx.imag();
                return -(dre * dre + dim * dim) / (2.0 * nm.sigma2);
            };
            for (unsigned k = 1; k < c.q; ++k) {
                const double want = logp(c.points[k]) - logp(c.points[0]);
                CHECK(v.comp(static_cast<Symbol>(k)) ==
                      doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("transmit noise statistics and determinism") {
    const Constellation c = Constellation::make_pam(5).normalized();
    const NoiseModel nm = NoiseModel::from_snr_db(6.0, c.es(), false);
    std::vector<Symbol> x(20000);
    CounterRng rng(43, 0);
    for (auto& s : x) s = static_cast<Symbol>(rng.next_below(5));
    const auto y1 = transmit(c, x, nm, 7, 0);
    const auto y2 = transmit(c, x, nm, 7, 0);
    CHECK(y1 == y2);
    const auto y3 = transmit(c, x, nm, 7, 1);
    CHECK(y1 != y3);
    double e2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) e2 += std::norm(y1[i] - c.points[x[i]]);
    e2 /= x.size();
    CHECK(e2 == doctest::Approx(2.0 * nm.sigma2).epsilon(0.05));
}

TEST_CASE("side information llr floors impossible symbols") {
    const JointSource psi = JointSource::perfect_side_info(4, {0.25, 0.25, 0.25, 0.25});
    const LlrVector v0 = side_info_llr(psi, 0);
    for (unsigned k = 1; k < 4; ++k) CHECK(v0.comp(static_cast<Symbol>(k)) == -kLlrClamp);
    const LlrVector v2 = side_info_llr(psi, 2);
    CHECK(v2.comp(2) == kLlrClamp);
    CHECK(v2.detect() == 2);
}

TEST_CASE("source codec round trip and guards") {
    const Field f(3);
    const size_t n = 64;
    ZEstimate z;
    z.z.resize(n);
    z.se.assign(n, 0.0);
    CounterRng rng(47, 0);
    for (auto& v : z.z) v = rng.next_double();
    SelectionCriterion fr;
    fr.kind = SelectionCriterion::Kind::FixedRate;
    fr.rate_k = 40;
    const PolarCode code = select_info_set(f, z, fr);

    const JointSource psi = JointSource::perfect_side_info(3, {0.3, 0.3, 0.4});
    std::vector<Symbol> x(n);
    for (auto& s : x) s = static_cast<Symbol>(rng.next_below(3));
    const std::vector<unsigned> y(x.begin(), x.end());

    const CompressedBlock blk = compress(f, code, x);
    CHECK(blk.frozen.size() == n - code.k());
    CHECK(blk.code_hash == code.hash());
    CHECK(decompress(f, code, blk, y, psi) == x);

    CompressedBlock bad = blk;
    bad.code_hash ^= 1;
    CHECK_THROWS(decompress(f, code, bad, y, psi));

    // the stored frozen symbols are u = xG restricted to the frozen set
    const auto u = polar_encode(f, x);
    size_t j = 0;
    for (uint32_t i : code.frozen_set()) CHECK(blk.frozen[j++] == u[i]);
}

TEST_CASE("channel codec round trip and frozen stream") {
    FrozenStream fs{5, 7, 0};
    std::vector<Symbol> first;
    for (int i = 0; i < 10; ++i) first.push_back(fs.next());
    CHECK(fs.cursor == 10);
    for (uint64_t i = 0; i < 10; ++i) CHECK(fs.at(i) == first[i]);

    const Field f(5);
    const size_t n = 64;
    ZEstimate z;
    z.z.resize(n);
    z.se.assign(n, 0.0);
    CounterRng rng(53, 0);
    for (auto& v : z.z) v = rng.next_double();
    SelectionCriterion fr;
    fr.kind = SelectionCriterion::Kind::FixedRate;
    fr.rate_k = 32;
    const PolarCode code = select_info_set(f, z, fr);

    std::vector<Symbol> s(32);
    for (auto& v : s) v = static_cast<Symbol>(rng.next_below(5));
    FrozenStream enc{9, 5, 0}, dec{9, 5, 0}, wrong{10, 5, 0};
    const auto x = channel_encode(f, code, s, enc);
    CHECK(enc.cursor == n - 32);
    std::vector<LlrVector> init(n);
    for (size_t i = 0; i < n; ++i) {
        init[i] = LlrVector(5);
        for (unsigned v = 1; v < 5; ++v)
            init[i].set(static_cast<Symbol>(v), v == x[i] ? kLlrClamp : -kLlrClamp);
    }
    CHECK(channel_decode(f, code, init, dec) == s);
    CHECK(channel_decode(f, code, init, wrong) != s);  // desynchronized stream
}

TEST_CASE("config parsing, overrides and includes") {
    const std::string base = tmp_path("base.cfg"), top = tmp_path("top.cfg");
    write_text(base, "# comment\nmodel=table\nn=1024\nseed=3\n");
    write_text(top, "include=" + base + "\nn=4096\nflag=1\n");
    const Config cfg = Config::load(top);
    CHECK(cfg.get("model") == "table");
    CHECK(cfg.get_u64("n") == 4096);  // later key overrides the include
    CHECK(cfg.get_u64_or("seed", 0) == 3);
    CHECK(cfg.get_bool_or("flag", false));
    CHECK(cfg.get_or("missing", "dflt") == "dflt");
    CHECK_THROWS_AS(cfg.get("missing"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("n=abc\n").get_u64("n"), ConfigError);
}

TEST_CASE("csv write and load round trip") {
    const std::string path = tmp_path("table.csv");
    CsvWriter w(path);
    w.metadata("command", "demo");
    w.metadata("q", "5");
    w.header({"a", "b"});
    w.row({"1", "0.5"});
    w.row({"2", format_double(1.0 / 3.0)});
    w.close();
    const CsvTable t = CsvTable::load(path);
    CHECK(t.metadata.at("command") == "demo");
    CHECK(t.columns == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(std::stod(t.rows[1][1]) == 1.0 / 3.0);
    CHECK(t.column_index("b") == 1);
    CHECK(t.column_index("zz") == -1);
}

TEST_CASE("format_double round trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.0, -2.5e17, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("svg plot writer") {
    const std::string path = tmp_path("plot.svg");
    PlotSpec spec;
    spec.title = "demo";
    spec.log_y = true;
    PlotSeries s;
    s.label = "a";
    s.x = {1, 2, 3};
    s.y = {1e-3, 1e-2, 1e-1};
    spec.series.push_back(s);
    write_svg_plot(path, spec);
    const std::string svg = read_text(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("demo") != std::string::npos);

    PlotSpec empty;
    CHECK_THROWS(write_svg_plot(path, empty));
}

TEST_CASE("cli construct in exact mode matches the enumerator") {
    Config cfg;
    cfg.set("model", "qsc:3,0.1");
    cfg.set("n", "4");
    cfg.set("mode", "exact");
    cfg.set("criterion", "fixed-rate 2");
    const auto res = cli::run_construct(cfg);
    const Field f(3);
    const auto exact = exact_z_all(f, JointSource::from_dmc(DmcChannel::qsc(3, 0.1)), 4);
    REQUIRE(res.code.z.z.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        CHECK(res.code.z.z[i] == doctest::Approx(exact[i]).epsilon(1e-12));
    CHECK(res.code.k() == 2);

    Config bad = cfg;
    bad.set("mode", "mc");  // mc without trials must be rejected
    CHECK_THROWS_AS(cli::run_construct(bad), ConfigError);
}

TEST_CASE("cli model and constellation specs") {
    Config cfg;
    cfg.set("model", "qsc:5,0.2");
    CHECK(cli::load_model(cfg).q == 5);
    cfg.set("model", "nope");
    CHECK_THROWS_AS(cli::load_model(cfg), ConfigError);

    Config c2;
    c2.set("constellation", "pam:8");
    CHECK(cli::load_constellation(c2).q == 8);
    CHECK(cli::load_constellation(c2).es() == doctest::Approx(1.0));
    c2.set("normalize", "0");
    CHECK(cli::load_constellation(c2).es() == doctest::Approx(21.0));
    c2.set("constellation", "hexagonal");
    CHECK_THROWS_AS(cli::load_constellation(c2), ConfigError);
}
