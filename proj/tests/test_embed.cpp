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
#include "translab/embed.hpp"
#include "translab/rng.hpp"

using namespace translab;

namespace {
StepFunction chi(const Rat& lo, const Rat& hi) { return StepFunction::indicator(Interval(lo, hi)); }

StepFunction random_window_fn(Rng& rng, long window) {
    std::vector<StepFunction::Piece> pieces;
    Rat cursor = rat(-window);
    while (cursor < rat(window)) {
        Rat next = cursor + rat(1 + static_cast<long>(rng.below(4)), 2);
        if (next > rat(window)) next = rat(window);
        const Rat v = rat(static_cast<long>(rng.below(9)) - 4, 1 + static_cast<long>(rng.below(2)));
        if (v != 0) pieces.push_back({cursor, next, v});
        cursor = next;
    }
    return StepFunction::from_pieces(std::move(pieces));
}
}  // namespace

TEST_CASE("dual systems are exactly biorthogonal") {
    // orthonormal inputs are self-dual
    std::vector<StepFunction> ortho{chi(Rat(0), Rat(1)), chi(Rat(1), Rat(2))};
    const auto self_dual = dual_system_l2(ortho, PNorm(2L));
    CHECK(self_dual.duals[0] == ortho[0]);
    CHECK(self_dual.duals[1] == ortho[1]);

    // overlapping boxes: inverse Gram (1/3)[[2,-1],[-1,2]]
    std::vector<StepFunction> boxes{chi(Rat(0), Rat(2)), chi(Rat(1), Rat(3))};
    const auto duals = dual_system_l2(boxes, PNorm(1L));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            CHECK(inner_l2(boxes[i], duals.duals[j]) == (i == j ? 1 : 0));
    CHECK(duals.bound_K == doctest::Approx(2.0 / 3.0).epsilon(1e-14));  // sup norm of the duals

    std::vector<StepFunction> dup{chi(Rat(0), Rat(1)), chi(Rat(0), Rat(1))};
    CHECK_THROWS_AS(dual_system_l2(dup, PNorm(2L)), SingularSystem);
}

TEST_CASE("conditional expectation: averaging, fixed points, idempotence, contraction") {
    const Partition unit({Rat(0), Rat(1)});
    CHECK(cond_expect(chi(Rat(0), rat(1, 2)), unit) == scale(chi(Rat(0), Rat(1)), rat(1, 2)));

    const Partition fine({Rat(0), rat(1, 2), Rat(1)});
    const StepFunction f = scale(chi(Rat(0), rat(1, 2)), rat(3)) - chi(rat(1, 2), Rat(1));
    CHECK(cond_expect(f, fine) == f);  // already measurable

    CHECK_THROWS_AS(cond_expect(chi(Rat(0), Rat(3)), unit), std::invalid_argument);

    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        const StepFunction g = random_window_fn(rng, 3);
        std::vector<Rat> cuts{rat(-3)};
        while (cuts.back() < rat(3)) {
            Rat next = cuts.back() + rat(1 + static_cast<long>(rng.below(3)), 2);
            cuts.push_back(std::min(next, rat(3)));
        }
        const Partition pi(cuts);
        const StepFunction e = cond_expect(g, pi);
        CHECK(cond_expect(e, pi) == e);
        for (long p : {1L, 2L, 3L})
            CHECK(lp_norm_power_exact(e, p) <= lp_norm_power_exact(g, p));
    }
}

TEST_CASE("embedding coordinates: isometric on measurable functions, contraction otherwise") {
    const Partition pi({Rat(0), rat(1, 2), Rat(1), Rat(2)});
    const StepFunction f = scale(chi(Rat(0), rat(1, 2)), rat(2)) - chi(Rat(1), Rat(2));
    for (long p : {1L, 2L, 3L}) {
        const auto cp = coords_lp_power(f, pi, PNorm(p));
        REQUIRE(cp.exact);
        CHECK(cp.value == lp_norm_power_exact(f, p));
    }

    // cancellation: h_2 integrates to zero against the single cell
    const Partition coarse({Rat(0), Rat(1)});
    const StepFunction h2 = haar({2, 0});
    const auto coords = embed_coords(h2, coarse, PNorm(1L));
    REQUIRE(coords.size() == 1);
    CHECK(coords[0] == 0.0);

    Rng rng(29);
    for (int t = 0; t < 25; ++t) {
        const StepFunction g = random_window_fn(rng, 2);
        const Partition pi2({rat(-2), rat(-1), rat(1, 2), Rat(2)});
        for (long p : {1L, 2L}) {
            const auto cp = coords_lp_power(g, pi2, PNorm(p));
            CHECK(cp.value <= lp_norm_power_exact(g, p));
        }
    }
}

TEST_CASE("build_partition on a single box needs one cell") {
    const TranslateSystem sys(chi(Rat(0), Rat(1)), {Rat(0)}, PNorm(1L));
    const auto duals = dual_system_l2(sys.members(), sys.p());
    const auto plan = build_partition(sys, duals, 0.1, 1);
    CHECK(plan.n_k == std::vector<size_t>{1});
    const StepFunction e = cond_expect(sys.member(0), plan.partition);
    CHECK(e == sys.member(0));
    for (const auto& cert : plan.block_certs) CHECK(cert.residual <= cert.threshold);
    CHECK_THROWS_AS(build_partition(sys, duals, 0.0, 1), std::invalid_argument);
}

TEST_CASE("build_partition certifies the Dilworth truncation at p = 1") {
    std::vector<Rat> lambdas;
    for (long i = 0; i < 8; ++i) lambdas.push_back(rat(i));
    const TranslateSystem sys(StepFunction::from_pieces({{rat(-3, 2), rat(-1, 2), Rat(1)},
                                                         {rat(-1, 2), rat(1, 2), Rat(2)},
                                                         {rat(1, 2), rat(3, 2), Rat(1)}}),
                              lambdas, PNorm(1L));
    const auto duals = dual_system_l2(sys.members(), sys.p());
    const auto plan = build_partition(sys, duals, 0.25, 3);

    for (const auto& cert : plan.tail_certs) {
        CHECK(cert.k_power * cert.tail_value <= cert.threshold_power);
        const Rat again = tail_mass_from(sys.members(), cert.from_index,
                                         Interval(-cert.window_radius, cert.window_radius), 1);
        CHECK(again == cert.tail_value);
    }
    Rat K_dual;
    mpq_set_d(K_dual.get_mpq_t(), std::max(duals.bound_K, 1.0));
    for (const auto& cert : plan.block_certs) {
        CHECK(cert.residual <= cert.threshold);
        const Rat again =
            block_residual_reevaluate(sys.members(), cert.span_count, cert.cuts, 1, K_dual);
        CHECK(again == cert.residual);
    }

    // partition covers all supports
    const auto hull = sys.member(7).support_hull();
    REQUIRE(hull);
    CHECK(plan.partition.window().lo <= hull->lo);
    CHECK(plan.partition.window().hi >= hull->hi);
}

TEST_CASE("distortion: measurable systems are isometric, refinement never hurts") {
    std::vector<Rat> lambdas;
    for (long i = 0; i <= 5; ++i) lambdas.push_back(rat(i));
    const TranslateSystem sys(chi(Rat(0), Rat(1)), lambdas, PNorm(1L));
    const Partition integer_cells({rat(-1), Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
    const auto rep = distortion_report(sys, integer_cells, sys.p(), 40, 11, rat(6));
    CHECK(rep.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));

    // a finer partition can only improve per-sample ratios
    const TranslateSystem half(chi(Rat(0), rat(3, 2)), {Rat(0), Rat(1), Rat(2)}, PNorm(1L));
    const Partition coarse({Rat(0), Rat(2), rat(7, 2)});
    const Partition fine = coarse.refined_with({Rat(1), Rat(3)});
    REQUIRE(fine.refines(coarse));
    const auto rc = distortion_report(half, coarse, half.p(), 60, 13, rat(4));
    const auto rf = distortion_report(half, fine, half.p(), 60, 13, rat(4));
    REQUIRE(rc.ratios.size() == rf.ratios.size());
    for (size_t i = 0; i < rc.ratios.size(); ++i)
        CHECK(rf.ratios[i].second >= rc.ratios[i].second - 1e-12);
    for (const auto& [id, r] : rc.ratios) CHECK(r <= 1.0 + 1e-12);
}

TEST_CASE("a mean-zero sample is crushed by the coarse partition") {
    // the sign function on [0,1] integrates to zero against the single cell,
    // so its coordinate map vanishes; refinement restores it
    const TranslateSystem sys(haar({2, 0}), {Rat(0)}, PNorm(1L));
    const Partition coarse({Rat(0), Rat(1)});
    const auto rep = distortion_report(sys, coarse, sys.p(), 4, 2, Rat(1));
    CHECK(rep.min_ratio == 0.0);
    const Partition fine({Rat(0), rat(1, 2), Rat(1)});
    const auto rep2 = distortion_report(sys, fine, sys.p(), 4, 2, Rat(1));
    CHECK(rep2.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lower l_q tail certificate bounds sampled residuals") {
    // overlapping boxes with honest duals
    std::vector<Rat> lambdas;
    for (long i = 0; i < 6; ++i) lambdas.push_back(rat(i));
    const TranslateSystem sys(chi(Rat(0), Rat(2)), lambdas, PNorm(1L));
    const auto members = sys.members();
    const auto duals = dual_system_l2(members, sys.p());
    const Interval I(Rat(0), Rat(3));

    Rng rng(37);
    double K = 0.0;
    struct Draw {
        std::vector<Rat> a;
        double coef_sup, norm;
    };
    std::vector<Draw> draws;
    for (int t = 0; t < 40; ++t) {
        std::vector<Rat> a(members.size());
        for (auto& v : a) v = rat(static_cast<long>(rng.below(9)) - 4, 2);
        const StepFunction f = lin_comb(a, members);
        const double nf = to_d(lp_norm_power_exact(f, 1));
        if (nf <= 0) continue;
        double sup = 0.0;
        for (const auto& v : a) sup = std::max(sup, std::fabs(to_d(v)));
        draws.push_back({a, sup, nf});
        K = std::max(K, sup / nf);
    }
    for (const auto& d : draws) {
        for (size_t n = 0; n < members.size(); ++n) {
            // residual of the coefficient tail against the certified bound
            std::vector<Rat> tail_coeffs(d.a.begin() + static_cast<long>(n), d.a.end());
            std::vector<StepFunction> tail_fns(members.begin() + static_cast<long>(n),
                                               members.end());
            const double resid =
                to_d(lp_norm_power_exact(restrict(lin_comb(tail_coeffs, tail_fns), I), 1));
            const double tail = to_d(tail_mass_from(members, n, I, 1));
            CHECK(resid <= K * d.norm * tail + 1e-9);
        }
    }
}
