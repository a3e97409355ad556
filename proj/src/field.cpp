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

#include "polarq/field.hpp"

#include <stdexcept>
#include <string>

namespace polarq {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// factor q = p^m with p prime; returns false if q is not a prime power
bool prime_power(unsigned q, unsigned& p, unsigned& m) {
    for (unsigned d = 2; d <= q; ++d) {
        if (q % d != 0) continue;
        unsigned r = q, e = 0;
        while (r % d == 0) { r /= d; ++e; }
        if (r != 1) return false;
        p = d;
        m = e;
        return is_prime(d);
    }
    return false;
}

// polynomials over F_p as digit vectors, constant term first
using Poly = std::vector<unsigned>;

unsigned degree(const Poly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<unsigned>(i);
    return 0;
}

// remainder of a / b over F_p, b monic-normalized internally
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
    const unsigned db = degree(b);
    unsigned lead_inv = 1;
    for (unsigned k = 1; k < p; ++k)
        if (b[db] * k % p == 1) { lead_inv = k; break; }
    while (true) {
        const unsigned da = degree(a);
        if (da < db || (da == 0 && a[0] == 0)) break;
        const unsigned c = a[da] * lead_inv % p;
        for (unsigned i = 0; i <= db; ++i)
            a[da - db + i] = (a[da - db + i] + p - c * b[i] % p) % p;
        if (degree(a) == da && a[da] != 0) break; // cancelled above; guard anyway
    }
    a.resize(db == 0 ? 1 : db);
    a.resize(db, 0);
    return a;
}

bool is_zero(const Poly& f) {
    for (unsigned c : f)
        if (c) return false;
    return true;
}

// exhaustive trial division by every monic polynomial of degree 1..deg/2
bool is_irreducible(const Poly& f, unsigned p) {
    const unsigned d = degree(f);
    for (unsigned dd = 1; dd <= d / 2; ++dd) {
        unsigned count = 1;
        for (unsigned i = 0; i < dd; ++i) count *= p;
        for (unsigned code = 0; code < count; ++code) {
            Poly g(dd + 1, 0);
            unsigned c = code;
            for (unsigned i = 0; i < dd; ++i) { g[i] = c % p; c /= p; }
            g[dd] = 1;
            if (is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

// smallest monic irreducible of degree m over F_p, by lexicographic scan
// of the low coefficients read as a base-p integer
Poly canonical_modulus(unsigned p, unsigned m) {
    unsigned count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (unsigned code = 0; code < count; ++code) {
        Poly f(m + 1, 0);
        unsigned c = code;
        for (unsigned i = 0; i < m; ++i) { f[i] = c % p; c /= p; }
        f[m] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found"); // cannot happen
}

} // namespace

Symbol Field::add_direct(Symbol a, Symbol b) const {
    if (m_ == 1) return static_cast<Symbol>((a + b) % p_);
    unsigned out = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
        const unsigned da = a % p_, db = b % p_;
        a = static_cast<Symbol>(a / p_);
        b = static_cast<Symbol>(b / p_);
        out += (da + db) % p_ * scale;
        scale *= p_;
    }
    return static_cast<Symbol>(out);
}

Symbol Field::mul_direct(Symbol a, Symbol b) const {
    if (m_ == 1) return static_cast<Symbol>(a * b % p_);
    // schoolbook product of the digit polynomials, then reduce
    Poly pa(m_, 0), pb(m_, 0), prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) { pa[i] = a % p_; a = static_cast<Symbol>(a / p_); }
    for (unsigned i = 0; i < m_; ++i) { pb[i] = b % p_; b = static_cast<Symbol>(b / p_); }
    for (unsigned i = 0; i < m_; ++i)
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
    const Poly r = poly_mod(prod, modulus_, p_);
    unsigned out = 0, scale = 1;
    for (unsigned i = 0; i < m_ && i < r.size(); ++i) {
        out += r[i] * scale;
        scale *= p_;
    }
    return static_cast<Symbol>(out);
}

bool Field::is_primitive(Symbol a) const {
    if (a == 0) throw std::invalid_argument("is_primitive: zero element");
    unsigned order = 1;
    Symbol x = a;
    while (x != 1) {
        x = mul(x, a);
        if (++order > q_) throw std::logic_error("element order exceeds field size");
    }
    return order == q_ - 1;
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw std::invalid_argument("inv: zero element");
    for (unsigned b = 1; b < q_; ++b)
        if (mul(a, static_cast<Symbol>(b)) == 1) return static_cast<Symbol>(b);
    throw std::logic_error("no inverse found");
}

Field::Field(unsigned q) : q_(q) {
    if (q < 2) throw std::invalid_argument("field order must be >= 2");
    if (q > 1024) throw std::invalid_argument("field order above 1024 unsupported");
    if (!prime_power(q, p_, m_))
        throw std::invalid_argument("not a prime power: " + std::to_string(q));
    if (m_ > 1) modulus_ = canonical_modulus(p_, m_);

    add_.resize(static_cast<size_t>(q) * q);
    mul_.resize(static_cast<size_t>(q) * q);
    neg_.resize(q);
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) {
            add_[a * q + b] = add_direct(static_cast<Symbol>(a), static_cast<Symbol>(b));
            mul_[a * q + b] = mul_direct(static_cast<Symbol>(a), static_cast<Symbol>(b));
        }
    for (unsigned a = 0; a < q; ++a) {
        for (unsigned b = 0; b < q; ++b)
            if (add_[a * q + b] == 0) { neg_[a] = static_cast<Symbol>(b); break; }
    }

    if (m_ == 1) {
        alpha_ = 1;
    } else {
        alpha_ = 0;
        for (unsigned a = 2; a < q; ++a)
            if (is_primitive(static_cast<Symbol>(a))) { alpha_ = static_cast<Symbol>(a); break; }
        if (alpha_ == 0) throw std::logic_error("no primitive element found");
    }
}

} // namespace polarq
