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

#include <doctest.h>

#include <cmath>

#include "translab/dyadic.hpp"
#include "translab/rng.hpp"

using namespace translab;

namespace {

StepFunction chi(const Rat& lo, const Rat& hi) { return StepFunction::indicator(Interval(lo, hi)); }

// independent oracle: moments by explicit iteration over all 2^n patterns
Rat brute_moment(const std::vector<Rat>& c, long p) {
    const size_t n = c.size();
    Rat acc(0);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        Rat s(0);
        for (size_t j = 0; j < n; ++j) s += (mask >> j) & 1 ? c[j] : Rat(-c[j]);
        acc += abs_pow(s, static_cast<unsigned long>(p));
    }
    Rat out = acc / rat(1L << n);
    return out;
}

}  // namespace

TEST_CASE("haar functions follow the dyadic list") {
    CHECK(haar({1, 0}) == chi(Rat(0), Rat(1)));
    CHECK(haar({2, 0}) == chi(Rat(0), rat(1, 2)) - chi(rat(1, 2), Rat(1)));
    CHECK(haar({3, 0}) == chi(Rat(0), rat(1, 4)) - chi(rat(1, 4), rat(1, 2)));
    CHECK(haar({4, 0}) == chi(rat(1, 2), rat(3, 4)) - chi(rat(3, 4), Rat(1)));
    CHECK(haar({5, 0}) == chi(Rat(0), rat(1, 8)) - chi(rat(1, 8), rat(1, 4)));
    CHECK(haar({2, 3}) == translate(haar({2, 0}), Rat(3)));

    for (long n = 1; n <= 32; ++n)
        for (long p : {1L, 2L, 5L})
            CHECK(haar_norm_power(n, p) == lp_norm_power_exact(haar({n, 0}), p));
}

TEST_CASE("normalized haar keeps the scale as an exact radical") {
    const auto h1 = haar_normalized({1, 0}, PNorm(3L));
    CHECK(h1.fn == chi(Rat(0), Rat(1)));
    CHECK(h1.scale.radicand == 1);
    CHECK(h1.scale.approx() == 1.0);

    // ||h_3||_2^2 = 1/2, so the normalizer is sqrt 2
    const auto h3 = haar_normalized({3, 0}, PNorm(2L));
    CHECK(h3.fn == haar({3, 0}));
    CHECK(h3.scale.radicand == 2);
    CHECK(h3.scale.index == 2);
    CHECK(h3.scale.approx() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("rademacher functions: base cases, blocks of haar, orthogonality") {
    CHECK(rademacher(1) == chi(Rat(0), Rat(1)));
    CHECK(rademacher(2) == haar({2, 0}));
    CHECK(rademacher(3) == haar({3, 0}) + haar({4, 0}));
    CHECK(rademacher(4) == haar({5, 0}) + haar({6, 0}) + haar({7, 0}) + haar({8, 0}));
    for (long n = 1; n <= 6; ++n) {
        CHECK(lp_norm_power_exact(rademacher(n), 1) == 1);
        for (long m = 1; m < n; ++m) CHECK(inner_l2(rademacher(n), rademacher(m)) == 0);
    }
}

TEST_CASE("moment oracle: pinned values and the brute-force oracle") {
    CHECK(rademacher_moment({Rat(1)}, PNorm(7L)).exact_value == 1);
    CHECK(rademacher_moment({Rat(1), Rat(1)}, PNorm(2L)).exact_value == 2);
    // 2^{-3} sum over 8 sign patterns of |±1±1±1|^4 = (2*81 + 6*1)/8 = 21
    CHECK(brute_moment({Rat(1), Rat(1), Rat(1)}, 4) == 21);
    CHECK(rademacher_moment({Rat(1), Rat(1), Rat(1)}, PNorm(4L)).exact_value == 21);

    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        std::vector<Rat> c(1 + rng.below(7));
        for (auto& v : c) v = rat(static_cast<long>(rng.below(13)) - 6, 1 + static_cast<long>(rng.below(4)));
        for (long p : {1L, 2L, 3L, 4L, 5L}) {
            const auto m = rademacher_moment(c, PNorm(p));
            REQUIRE(m.exact);
            CHECK(m.exact_value == brute_moment(c, p));
        }
        CHECK(rademacher_moment(c, PNorm(2L)).exact_value == moment_closed_form_p2(c));
        CHECK(rademacher_moment(c, PNorm(4L)).exact_value == moment_closed_form_p4(c));
    }
}

TEST_CASE("Khintchine sandwich on enumerated instances") {
    Rng rng(9);
    for (int t = 0; t < 25; ++t) {
        std::vector<Rat> c(1 + rng.below(6));
        for (auto& v : c) v = rat(static_cast<long>(rng.below(9)) - 4, 1 + static_cast<long>(rng.below(3)));
        Rat l2(0);
        for (const auto& v : c) l2 += v * v;
        const double root_l2 = std::sqrt(to_d(l2));
        for (long p : {2L, 3L, 4L, 6L}) {
            const double norm = std::pow(rademacher_moment(c, PNorm(p)).value,
                                         1.0 / static_cast<double>(p));
            CHECK(norm >= root_l2 - 1e-12);
        }
        for (long p : {1L, 2L}) {
            const double norm = std::pow(rademacher_moment(c, PNorm(p)).value,
                                         1.0 / static_cast<double>(p));
            CHECK(norm <= root_l2 + 1e-12);
        }
    }
}

TEST_CASE("Monte Carlo path lands within three standard errors of enumeration") {
    Rng rng(41);
    std::vector<Rat> c(18);
    for (auto& v : c) v = rat(static_cast<long>(rng.below(17)) - 8, 1 + static_cast<long>(rng.below(4)));
    c[0] = 1;
    const auto exact = rademacher_moment(c, PNorm(3L));
    REQUIRE(exact.exact);
    MomentPolicy policy;
    policy.enum_cap = 4;  // force sampling
    policy.mc_samples = 200000;
    policy.seed = 77;
    const auto mc = rademacher_moment(c, PNorm(3L), policy);
    CHECK_FALSE(mc.exact);
    CHECK(mc.std_error > 0);
    CHECK(std::fabs(mc.value - exact.value) <= 3.0 * mc.std_error);
}

TEST_CASE("square function norms") {
    const std::vector<Rat> one{Rat(1)};
    const std::vector<StepFunction> f1{chi(Rat(0), Rat(1))};
    CHECK(square_function_pnorm_power(one, f1, PNorm(3L)).value == 1);

    // disjoint supports collapse the square function exactly,
    // result^p = sum |a_i|^p ||f_i||_p^p
    const std::vector<Rat> a{rat(3, 2), rat(-2)};
    const std::vector<StepFunction> fns{chi(Rat(0), Rat(1)), chi(Rat(2), rat(7, 2))};
    for (long p : {1L, 2L, 3L}) {
        const auto got = square_function_pnorm_power(a, fns, PNorm(p));
        REQUIRE(got.exact);
        Rat expected(0);
        for (size_t i = 0; i < a.size(); ++i)
            expected += abs_pow(a[i], static_cast<unsigned long>(p)) *
                        lp_norm_power_exact(fns[i], p);
        CHECK(got.value == expected);
    }

    // r_1^2 + r_2^2 = 2 pointwise, so the norm is sqrt 2 for every p
    const std::vector<Rat> aa{Rat(1), Rat(1)};
    const std::vector<StepFunction> rr{rademacher(1), rademacher(2)};
    for (double p : {1.0, 2.0, 2.5, 4.0})
        CHECK(square_function_pnorm(aa, rr, PNorm(p)) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // single function: |a| ||f||_p exactly
    const std::vector<Rat> a2{rat(-5, 3)};
    const auto single = square_function_pnorm_power(a2, f1, PNorm(2L));
    REQUIRE(single.exact);
    CHECK(single.value == rat(25, 9));
}

TEST_CASE("haar coefficients: expansion and exact reconstruction") {
    const auto coef_h2 = haar_coefficients(haar({2, 0}), 3);
    for (const auto& [idx, c] : coef_h2) CHECK(c == (idx.n == 2 ? 1 : 0));

    const auto coef_half = haar_coefficients(chi(Rat(0), rat(1, 2)), 1);
    REQUIRE(coef_half.size() == 2);
    CHECK(coef_half[0].second == rat(1, 2));
    CHECK(coef_half[1].second == rat(1, 2));

    Rng rng(15);
    for (int t = 0; t < 20; ++t) {
        const int depth = 1 + static_cast<int>(rng.below(4));
        const long cells = 1L << depth;
        std::vector<StepFunction::Piece> pieces;
        for (long i = 0; i < cells; ++i) {
            const Rat v = rat(static_cast<long>(rng.below(9)) - 4);
            if (v != 0) pieces.push_back({rat(i, cells), rat(i + 1, cells), v});
        }
        const StepFunction f = StepFunction::from_pieces(std::move(pieces));
        const auto coef = haar_coefficients(f, depth);
        std::vector<Rat> cs;
        std::vector<StepFunction> hs;
        for (const auto& [idx, c] : coef) {
            cs.push_back(c);
            hs.push_back(haar(idx));
        }
        CHECK(lin_comb(cs, hs) == f);
    }

    CHECK_THROWS_AS(haar_coefficients(chi(Rat(0), rat(1, 3)), 3), std::invalid_argument);
    CHECK_THROWS_AS(haar_coefficients(chi(Rat(0), Rat(2)), 3), std::invalid_argument);
}

TEST_CASE("dyadic tensors carry exact tensor-product norms") {
    const auto h3 = DyadicTensor::from_step(haar({3, 0}), 2);
    const auto r2 = DyadicTensor::from_step(rademacher(2), 2);
    const auto t = DyadicTensor::product(h3, r2);
    CHECK(t.is_two_dim());
    // |h_3 x r_2| is the indicator of a quarter of the square
    for (long p : {1L, 2L, 5L}) CHECK(t.lp_norm_power_exact(p) == rat(1, 2));

    auto sum = DyadicTensor::product(DyadicTensor::from_step(haar({1, 0}), 2),
                                     DyadicTensor::from_step(rademacher(1), 2));
    sum.add_scaled(rat(-1), sum);
    CHECK(sum.lp_norm_power_exact(1) == 0);

    CHECK_THROWS_AS(DyadicTensor::from_step(chi(Rat(0), rat(1, 3)), 2), std::invalid_argument);
}
