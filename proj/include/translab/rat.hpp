// translab/rat.hpp -- exact rational scalars on top of GMP.
//
// Copyright 2026 The translab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRANSLAB_RAT_HPP
#define TRANSLAB_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace translab {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return out;  // powers of a canonical rational are canonical
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// |q|^p for integer p >= 0
inline Rat abs_pow(const Rat& q, unsigned long p) { return rat_pow(rat_abs(q), p); }

// smallest integer >= q
inline Int rat_ceil(const Rat& q) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

inline double to_d(const Rat& q) { return q.get_d(); }

// is q the square of a rational?  If so store the nonnegative root.
inline bool rat_sqrt_exact(const Rat& q, Rat& root) {
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(q.get_den().get_mpz_t()))
        return false;
    Rat r;
    mpz_sqrt(r.get_num_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), q.get_den().get_mpz_t());
    root = r;
    return true;
}

// Parses "n", "n/d" or an exact decimal such as "-1.25".
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rat q;
        if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || digits.empty())
        throw std::invalid_argument("bad decimal literal: " + text);
    Int num(digits, 10);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// A numeric result that is exact whenever the arithmetic allows it.
struct Scalar {
    double approx = 0.0;
    bool exact = false;
    Rat value;  // meaningful only when exact

    static Scalar from_rat(Rat v) { return Scalar{to_d(v), true, std::move(v)}; }
    static Scalar from_double(double v) { return Scalar{v, false, Rat()}; }
};

}  // namespace translab

#endif  // TRANSLAB_RAT_HPP
