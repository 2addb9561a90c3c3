// translab/stepfn.hpp -- exact piecewise-constant functions on the line.
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

#ifndef TRANSLAB_STEPFN_HPP
#define TRANSLAB_STEPFN_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "translab/rat.hpp"

namespace translab {

struct Interval {
    Rat lo, hi;

    Interval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (!(lo < hi)) throw std::invalid_argument("Interval requires lo < hi");
    }
    Rat length() const { return hi - lo; }
};

// Exponent of an L_p norm.  Results are exact rationals iff p is a positive
// integer; otherwise evaluation falls back to double precision with a
// relative error budget of 1e-12.
class PNorm {
public:
    explicit PNorm(long p) : p_(static_cast<double>(p)), ip_(p), integral_(true) {
        if (p < 1) throw std::domain_error("PNorm requires p >= 1");
    }
    explicit PNorm(double p) : p_(p) {
        if (!(p >= 1.0)) throw std::domain_error("PNorm requires p >= 1");
        long n = static_cast<long>(p);
        integral_ = (static_cast<double>(n) == p);
        ip_ = integral_ ? n : 0;
    }

    double value() const { return p_; }
    bool is_integer() const { return integral_; }
    long integer() const {
        if (!integral_) throw std::logic_error("PNorm exponent is not an integer");
        return ip_;
    }

private:
    double p_;
    long ip_ = 0;
    bool integral_;
};

// Compactly supported step function with rational breakpoints and values,
// held in canonical form: pieces sorted and disjoint, every value nonzero,
// touching pieces with equal values merged.  The zero function is the empty
// piece list.  Values are taken on [lo, hi); the function vanishes off the
// pieces.  Instances are immutable after construction.
class StepFunction {
public:
    struct Piece {
        Rat lo, hi, value;
        friend bool operator==(const Piece&, const Piece&) = default;
    };

    StepFunction() = default;

    // Builds from arbitrary non-overlapping pieces (any order, zero values
    // and touching equal values allowed); canonicalizes.  Overlapping input
    // pieces are an error: use lin_comb to sum overlapping contributions.
    static StepFunction from_pieces(std::vector<Piece> pieces);

    static StepFunction indicator(const Interval& I) {
        return from_pieces({{I.lo, I.hi, Rat(1)}});
    }

    bool is_zero() const { return pieces_.empty(); }
    const std::vector<Piece>& pieces() const { return pieces_; }

    Rat eval(const Rat& x) const;
    std::optional<Interval> support_hull() const;

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    std::vector<Piece> pieces_;
};

StepFunction translate(const StepFunction& f, const Rat& lambda);
StepFunction scale(const StepFunction& f, const Rat& c);
StepFunction lin_comb(std::span<const Rat> coeffs, std::span<const StepFunction> fns);
StepFunction restrict(const StepFunction& f, const Interval& I);

inline StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    const Rat one(1);
    const StepFunction fns[] = {f, g};
    const Rat cs[] = {one, one};
    return lin_comb(cs, fns);
}
inline StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    const StepFunction fns[] = {f, g};
    const Rat cs[] = {Rat(1), Rat(-1)};
    return lin_comb(cs, fns);
}

// pointwise product; exact
StepFunction pointwise_product(const StepFunction& f, const StepFunction& g);

Rat integral(const StepFunction& f);
Rat inner_l2(const StepFunction& f, const StepFunction& g);

// ||f||_p^p.  Norm powers are the exact currency throughout; callers take
// roots.
Rat lp_norm_power_exact(const StepFunction& f, long p);
Scalar lp_norm_power(const StepFunction& f, const PNorm& p);
double lp_norm(const StepFunction& f, const PNorm& p);

// max(||f||_p, ||f||_2); requires p > 2 (the L_p \cap L_2 norm).
double intersection_norm(const StepFunction& f, const PNorm& p);

// f^(t) = (2*pi)^(-1/2) * Integral f(x) e^{-ixt} dx, in closed form.
std::complex<double> fourier_eval(const StepFunction& f, double t);

}  // namespace translab

#endif  // TRANSLAB_STEPFN_HPP
