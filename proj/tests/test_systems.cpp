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
#include "translab/experiments.hpp"
#include "translab/rng.hpp"
#include "translab/systems.hpp"

using namespace translab;

namespace {
StepFunction chi(const Rat& lo, const Rat& hi) { return StepFunction::indicator(Interval(lo, hi)); }
}  // namespace

TEST_CASE("separation: exact minimum gaps") {
    CHECK(separation({rat(0), rat(1), rat(2), rat(3)}) == 1);
    std::vector<Rat> geometric;
    for (long j = 1; j <= 5; ++j) geometric.push_back(rat(-(long)std::pow(3, j)));
    CHECK(separation(geometric) == 6);
    CHECK_THROWS_AS(separation({rat(1), rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(separation({rat(1)}), std::invalid_argument);
}

TEST_CASE("tail mass with its certified bound") {
    std::vector<Rat> lambdas;
    for (long i = -3; i <= 3; ++i) lambdas.push_back(rat(i));
    const TranslateSystem sys(chi(Rat(0), Rat(1)), lambdas, PNorm(1L));

    const auto one = tail_mass(sys, Interval(Rat(0), Rat(1)));
    CHECK(one.value.value == 1);
    CHECK(one.bound.value == 1);
    CHECK(one.within);

    const auto two = tail_mass(sys, Interval(Rat(0), Rat(2)));
    CHECK(two.value.value == 2);
    CHECK(two.bound.value == 2);
    CHECK(two.within);

    const auto sliver = tail_mass(sys, Interval(rat(1, 2), rat(1, 2) + rat(1, 1000000)));
    CHECK(sliver.value.value == rat(1, 1000000));
    CHECK(sliver.within);
}

TEST_CASE("gram matrices are exact and positive semidefinite") {
    const RatMat G = gram_l2({haar({1, 0}), haar({2, 0}), haar({3, 0})});
    CHECK(G[0][0] == 1);
    CHECK(G[1][1] == 1);
    CHECK(G[2][2] == rat(1, 2));
    CHECK(G[0][1] == 0);
    CHECK(G[0][2] == 0);
    CHECK(G[1][2] == 0);

    CHECK(inner_l2(chi(Rat(0), Rat(1)), chi(rat(1, 2), rat(3, 2))) == rat(1, 2));

    Rng rng(21);
    for (int t = 0; t < 15; ++t) {
        std::vector<StepFunction> fns;
        const size_t n = 2 + rng.below(4);
        for (size_t i = 0; i < n; ++i) {
            std::vector<StepFunction::Piece> pieces;
            Rat cursor = rat(static_cast<long>(rng.below(7)) - 3);
            for (size_t k = 0; k < 1 + rng.below(3); ++k) {
                Rat next = cursor + rat(1 + static_cast<long>(rng.below(4)), 2);
                const Rat v = rat(static_cast<long>(rng.below(9)) - 4);
                if (v != 0) pieces.push_back({cursor, next, v});
                cursor = next;
            }
            fns.push_back(StepFunction::from_pieces(std::move(pieces)));
        }
        CHECK(is_psd(gram_l2(fns)));
    }
}

TEST_CASE("L2 distances to spans") {
    // disjoint unit-norm system: distance from any member to the others is 1
    std::vector<Rat> lambdas{rat(0), rat(2), rat(4)};
    const TranslateSystem disjoint(chi(Rat(0), Rat(1)), lambdas, PNorm(2L));
    const auto d = minimality_distance_l2(disjoint, 1, {0, 1, 2});
    CHECK(d.dist_sq == 1);

    // overlapping boxes: dist(f_0, span f_1)^2 = 2 - (1/2)^2 / ... = 3/2
    const TranslateSystem boxes(chi(Rat(0), Rat(2)), {rat(0), rat(1)}, PNorm(2L));
    const auto d2 = minimality_distance_l2(boxes, 0, {0, 1});
    CHECK(d2.dist_sq == rat(3, 2));
    CHECK(d2.dist == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

    CHECK_THROWS_AS(minimality_distance_l2(boxes, 0, {1}), std::invalid_argument);
}

TEST_CASE("non-minimality of the alternating bump: distances shrink under the witness") {
    const StepFunction f = experiments::diff_bump_base();
    double last = 10.0;
    for (long n : {1L, 2L, 4L, 8L}) {
        std::vector<Rat> lambdas;
        for (long i = -n; i <= n; ++i) lambdas.push_back(rat(i));
        const TranslateSystem sys(f, lambdas, PNorm(2L));
        std::vector<size_t> window(sys.size());
        for (size_t i = 0; i < window.size(); ++i) window[i] = i;
        const auto d = minimality_distance_l2(sys, static_cast<size_t>(n), window);

        std::vector<Rat> wc(sys.size());
        for (long i = -n; i <= n; ++i) wc[static_cast<size_t>(i + n)] = rat(n - std::labs(i), n);
        const Rat witness_power = lp_norm_power_exact(lin_comb(wc, sys.members()), 2);
        CHECK(d.dist_sq <= witness_power);
        CHECK(d.dist <= last + 1e-15);
        last = d.dist;
    }
}

TEST_CASE("unconditional constant: disjoint systems stay at 1") {
    std::vector<StepFunction> fns;
    for (long i = 0; i < 5; ++i) fns.push_back(chi(rat(3 * i), rat(3 * i + 2)));
    const auto est = unconditional_constant_lb(fns, PNorm(1L), SearchMode::enumerate, 8, 99);
    CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(est.ratio_power.exact);
    CHECK(est.ratio_power.value == 1);
}

TEST_CASE("unconditional constant grows for the non-unconditional bump system") {
    const StepFunction f = experiments::diff_bump_base();
    double last = 0.0;
    for (long n : {1L, 2L, 4L}) {
        std::vector<StepFunction> fns;
        for (long i = -2 * n; i <= 2 * n; ++i) fns.push_back(translate(f, rat(i)));
        const auto est = unconditional_constant_lb(fns, PNorm(1L), SearchMode::enumerate, 4, 7);
        // the alternating-sign witness on all-ones coefficients gives 4n+... /2
        CHECK(est.lower_bound > last);
        CHECK(est.lower_bound >= static_cast<double>(4 * n) - 1e-9);
        last = est.lower_bound;
    }
}

TEST_CASE("witness certificates reproduce and scale exactly") {
    const StepFunction f = experiments::diff_bump_base();
    std::vector<StepFunction> fns;
    for (long i = -2; i <= 2; ++i) fns.push_back(translate(f, rat(i)));
    const auto est1 = unconditional_constant_lb(fns, PNorm(1L), SearchMode::enumerate, 6, 2024);
    const auto est2 = unconditional_constant_lb(fns, PNorm(1L), SearchMode::enumerate, 6, 2024);
    CHECK(est1.lower_bound == est2.lower_bound);
    CHECK(est1.coeffs == est2.coeffs);
    CHECK(est1.signs == est2.signs);
    CHECK(est1.ratio_power.value == est2.ratio_power.value);

    // scaling the system by a nonzero rational leaves the certified ratio alone
    std::vector<StepFunction> scaled;
    for (const auto& g : fns) scaled.push_back(scale(g, rat(-3, 7)));
    const auto rescored = sign_ratio_power(scaled, PNorm(1L), est1.coeffs, est1.signs);
    CHECK(rescored.value == est1.ratio_power.value);

    // sampled mode is reproducible as well
    const auto s1 = unconditional_constant_lb(fns, PNorm(1L), SearchMode::sample, 10, 5);
    const auto s2 = unconditional_constant_lb(fns, PNorm(1L), SearchMode::sample, 10, 5);
    CHECK(s1.lower_bound == s2.lower_bound);
}

TEST_CASE("basis constant: orthonormal prefixes contract") {
    std::vector<StepFunction> fns;
    for (long i = 0; i < 6; ++i) fns.push_back(chi(rat(2 * i), rat(2 * i + 1)));
    const auto est = basis_constant_lb(fns, PNorm(2L), 50, 31);
    CHECK(est.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(est.ratio_power.exact);
    CHECK(est.ratio_power.value == 1);
}

TEST_CASE("basis constant of the bump system in the alternating order stays moderate") {
    const StepFunction f = experiments::diff_bump_base();
    std::vector<StepFunction> fns{translate(f, rat(0))};
    for (long k = 1; k <= 8; ++k) {
        fns.push_back(translate(f, rat(k)));
        fns.push_back(translate(f, rat(-k)));
    }
    const auto est = basis_constant_lb(fns, PNorm(1L), 300, 12);
    CHECK(est.lower_bound >= 1.0 - 1e-12);
    CHECK(est.lower_bound < 10.0);

    // prefix witnesses also rescale exactly
    std::vector<StepFunction> scaled;
    for (const auto& g : fns) scaled.push_back(scale(g, rat(5, 3)));
    const auto rescored = prefix_ratio_power(scaled, PNorm(1L), est.coeffs, est.prefix);
    CHECK(rescored.value == est.ratio_power.value);
}

TEST_CASE("disjoint-window mass gives the l1 lower bound") {
    // ||f||_1 = 1 with mass 3/4 on [0,1] and 1/4 on [5,6]
    const StepFunction f = scale(chi(Rat(0), Rat(1)), rat(3, 4)) + scale(chi(Rat(5), Rat(6)), rat(1, 4));
    REQUIRE(lp_norm_power_exact(f, 1) == 1);
    std::vector<Rat> lambdas;
    for (long i = 0; i < 6; ++i) lambdas.push_back(rat(10 * i));
    const TranslateSystem sys(f, lambdas, PNorm(1L));
    const auto members = sys.members();
    const Rat lambda_mass = rat(3, 4);

    // translated windows carry the same mass exactly (translation invariance)
    for (size_t i = 0; i < members.size(); ++i) {
        const Interval Bi(sys.lambdas()[i], sys.lambdas()[i] + 1);
        CHECK(lp_norm_power_exact(restrict(members[i], Bi), 1) == lambda_mass);
    }

    Rng rng(77);
    for (int t = 0; t < 30; ++t) {
        std::vector<Rat> a(members.size());
        Rat abs_sum(0);
        for (auto& v : a) {
            v = rat(static_cast<long>(rng.below(13)) - 6, 1 + static_cast<long>(rng.below(3)));
            abs_sum += rat_abs(v);
        }
        const Rat norm1 = lp_norm_power_exact(lin_comb(a, members), 1);
        CHECK(norm1 >= (2 * lambda_mass - 1) * abs_sum);
    }
}

TEST_CASE("window series") {
    CHECK(window_series(chi(Rat(0), Rat(1)), PNorm(3L), 2.5, -4, 6) == doctest::Approx(1.0));
    const StepFunction f = experiments::dilworth_base();
    const double full = window_series(f, PNorm(1L), 1.0, -10, 10);
    const double cover = window_series(f, PNorm(1L), 1.0, -2, 2);
    CHECK(full == doctest::Approx(cover).epsilon(1e-15));

    // analytic window norms n^{-1/2} reproduce 1 + 2 sum n^{-r/2}
    const long N = 50;
    const double r = 3.0;
    std::vector<double> norms{1.0};
    double expected = 1.0;
    for (long n = 1; n <= N; ++n) {
        const double wn = 1.0 / std::sqrt(static_cast<double>(n));
        norms.push_back(wn);
        norms.push_back(wn);
        expected += 2.0 * std::pow(static_cast<double>(n), -r / 2.0);
    }
    CHECK(series_from_window_norms(norms, r) == doctest::Approx(expected).epsilon(1e-12));
}
