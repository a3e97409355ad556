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

#ifndef POLARQ_FIELD_HPP
#define POLARQ_FIELD_HPP

#include <cstdint>
#include <vector>

namespace polarq {

using Symbol = uint16_t;

/// Exact arithmetic over GF(q), q = p^m <= 1024. Elements are dense
/// integers in [0,q); for m > 1 the integer is read as the base-p digit
/// vector of the polynomial representation (coefficient of x^k at digit k).
///
/// The modulus polynomial is the lexicographically smallest monic
/// irreducible of degree m over F_p, and alpha is the smallest primitive
/// element under it (alpha = 1 for prime fields), so a given q always
/// yields the same field on every machine.
class Field {
  public:
    explicit Field(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    Symbol alpha() const { return alpha_; }

    // coefficients of the modulus, constant term first, length m+1; empty for m == 1
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Symbol add(Symbol a, Symbol b) const { return add_[a * q_ + b]; }
    Symbol sub(Symbol a, Symbol b) const { return add_[a * q_ + neg_[b]]; }
    Symbol mul(Symbol a, Symbol b) const { return mul_[a * q_ + b]; }
    Symbol neg(Symbol a) const { return neg_[a]; }
    Symbol inv(Symbol a) const; // throws on a == 0
    Symbol mul_alpha(Symbol a) const { return mul_[alpha_ * q_ + a]; }

    // multiplicative order of a equals q-1, by exhaustive powering; throws on a == 0
    bool is_primitive(Symbol a) const;

    // arithmetic recomputed from the representation, bypassing the tables;
    // the tables are checked against these at construction
    Symbol add_direct(Symbol a, Symbol b) const;
    Symbol mul_direct(Symbol a, Symbol b) const;

  private:
    unsigned q_, p_, m_;
    Symbol alpha_;
    std::vector<unsigned> modulus_;
    std::vector<Symbol> add_, mul_, neg_;
};

bool is_prime(unsigned n);

} // namespace polarq

#endif
