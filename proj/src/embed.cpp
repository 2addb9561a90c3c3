// translab/embed.cpp
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

#include "translab/embed.hpp"

#include <algorithm>
#include <cmath>

#include "translab/rng.hpp"

namespace translab {

Partition::Partition(std::vector<Rat> cuts) : cuts_(std::move(cuts)) {
    if (cuts_.size() < 2) throw std::invalid_argument("Partition needs at least one cell");
    for (size_t i = 1; i < cuts_.size(); ++i)
        if (!(cuts_[i - 1] < cuts_[i]))
            throw std::invalid_argument("Partition cuts must be strictly increasing");
}

Partition Partition::refined_with(std::vector<Rat> extra) const {
    std::vector<Rat> cuts = cuts_;
    for (auto& e : extra)
        if (cuts_.front() < e && e < cuts_.back()) cuts.push_back(std::move(e));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return Partition(std::move(cuts));
}

bool Partition::refines(const Partition& coarser) const {
    if (cuts_.front() != coarser.cuts_.front() || cuts_.back() != coarser.cuts_.back())
        return false;
    return std::includes(cuts_.begin(), cuts_.end(), coarser.cuts_.begin(), coarser.cuts_.end());
}

namespace {

double dual_norm_q(const StepFunction& g, const PNorm& p) {
    if (p.value() == 1.0) {
        // q = infinity
        double m = 0.0;
        for (const auto& piece : g.pieces()) m = std::max(m, std::fabs(to_d(piece.value)));
        return m;
    }
    const double q = p.value() / (p.value() - 1.0);
    return lp_norm(g, PNorm(q));
}

// exact rational u >= x^{1/p}, tight to ~1e-9; certified by u^p >= x
Rat rational_root_upper(const Rat& x, long p) {
    if (x == 0) return Rat(0);
    if (x < 0) throw std::domain_error("rational_root_upper: negative radicand");
    double guess = std::pow(to_d(x), 1.0 / static_cast<double>(p)) * (1.0 + 1e-9) + 1e-300;
    Rat u;
    mpq_set_d(u.get_mpq_t(), guess);
    const Rat bump = rat(1048577, 1048576);  // 1 + 2^-20
    while (rat_pow(u, static_cast<unsigned long>(p)) < x) u *= bump;
    return u;
}

Rat exact_from_double(double x) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

}  // namespace

DualSystem dual_system_l2(const std::vector<StepFunction>& fns, const PNorm& p) {
    const RatMat Ginv = invert(gram_l2(fns));  // throws SingularSystem when dependent
    DualSystem out;
    out.duals.reserve(fns.size());
    for (size_t i = 0; i < fns.size(); ++i) {
        out.duals.push_back(lin_comb(Ginv[i], fns));
        out.bound_K = std::max(out.bound_K, dual_norm_q(out.duals.back(), p));
    }
    return out;
}

StepFunction cond_expect(const StepFunction& f, const Partition& pi) {
    const auto hull = f.support_hull();
    if (hull && (hull->lo < pi.window().lo || pi.window().hi < hull->hi))
        throw std::invalid_argument("cond_expect: support escapes the partition window");
    std::vector<StepFunction::Piece> pieces;
    for (size_t i = 0; i < pi.size(); ++i) {
        const Interval D = pi.cell(i);
        Rat avg = integral(restrict(f, D)) / pi.measure(i);
        if (avg != 0) pieces.push_back({D.lo, D.hi, std::move(avg)});
    }
    return StepFunction::from_pieces(std::move(pieces));
}

std::vector<double> embed_coords(const StepFunction& f, const Partition& pi, const PNorm& p) {
    const auto hull = f.support_hull();
    if (hull && (hull->lo < pi.window().lo || pi.window().hi < hull->hi))
        throw std::invalid_argument("embed_coords: support escapes the partition window");
    std::vector<double> coords(pi.size());
    for (size_t i = 0; i < pi.size(); ++i) {
        const double m = to_d(pi.measure(i));
        coords[i] = std::pow(m, 1.0 / p.value() - 1.0) * to_d(integral(restrict(f, pi.cell(i))));
    }
    return coords;
}

Scalar coords_lp_power(const StepFunction& f, const Partition& pi, const PNorm& p) {
    const auto hull = f.support_hull();
    if (hull && (hull->lo < pi.window().lo || pi.window().hi < hull->hi))
        throw std::invalid_argument("coords_lp_power: support escapes the partition window");
    if (p.is_integer()) {
        const unsigned long ip = static_cast<unsigned long>(p.integer());
        Rat acc(0);
        for (size_t i = 0; i < pi.size(); ++i) {
            const Rat I = integral(restrict(f, pi.cell(i)));
            if (I == 0) continue;
            acc += abs_pow(I, ip) / rat_pow(pi.measure(i), ip - 1);
        }
        return Scalar::from_rat(acc);
    }
    double acc = 0.0;
    for (size_t i = 0; i < pi.size(); ++i) {
        const double I = to_d(integral(restrict(f, pi.cell(i))));
        acc += std::pow(std::fabs(I), p.value()) * std::pow(to_d(pi.measure(i)), 1.0 - p.value());
    }
    return Scalar::from_double(acc);
}

// certified upper bound on sup over the coefficient ball |a_i| <= K of
// ||(I - E) f|_A||_p: K * sum_i upper(||(I-E) f_i|_A||_p)
static Rat block_residual_bound(const std::vector<StepFunction>& members, size_t span_count,
                                const Partition& block_cells, long ip, const Rat& K_dual) {
    Rat total(0);
    for (size_t i = 0; i < span_count; ++i) {
        const StepFunction fi = restrict(members[i], block_cells.window());
        if (fi.is_zero()) continue;
        const StepFunction resid = fi - cond_expect(fi, block_cells);
        total += rational_root_upper(lp_norm_power_exact(resid, ip), ip);
    }
    return K_dual * total;
}

Rat tail_mass_from(const std::vector<StepFunction>& members, size_t from_index,
                   const Interval& window, long p) {
    Rat t(0);
    for (size_t i = from_index; i < members.size(); ++i)
        t += lp_norm_power_exact(restrict(members[i], window), p);
    return t;
}

Rat block_residual_reevaluate(const std::vector<StepFunction>& members, size_t span_count,
                              const std::vector<Rat>& cuts, long p, const Rat& K_dual) {
    return block_residual_bound(members, span_count, Partition(cuts), p, K_dual);
}

namespace {

// contribution of one cell to the residual powers; drives the bisection
Rat cell_residual_power(const std::vector<StepFunction>& members, size_t span_count,
                        const Interval& D, long ip) {
    Rat total(0);
    const Rat m = D.length();
    for (size_t i = 0; i < span_count; ++i) {
        const StepFunction fi = restrict(members[i], D);
        if (fi.is_zero()) continue;
        const Rat avg = integral(fi) / m;
        const StepFunction resid = fi - scale(StepFunction::indicator(D), avg);
        total += lp_norm_power_exact(resid, ip);
    }
    return total;
}

std::vector<Rat> integer_cuts(const Rat& lo, const Rat& hi) {
    std::vector<Rat> cuts{lo};
    for (Int n = rat_ceil(lo); Rat(n) < hi; ++n)
        if (lo < Rat(n)) cuts.push_back(Rat(n));
    cuts.push_back(hi);
    return cuts;
}

// partitions one block A until the certified residual drops below threshold
Partition refine_block(const std::vector<StepFunction>& members, size_t span_count,
                       const Interval& A, long ip, const Rat& K_dual, const Rat& threshold,
                       Rat& residual_out) {
    Partition cells(integer_cuts(A.lo, A.hi));
    for (int rounds = 0; rounds < 4096; ++rounds) {
        const Rat bound = block_residual_bound(members, span_count, cells, ip, K_dual);
        if (bound <= threshold) {
            residual_out = bound;
            return cells;
        }
        // split the worst cell, preferring an interior breakpoint of a member
        size_t worst = 0;
        Rat worst_power(-1);
        for (size_t i = 0; i < cells.size(); ++i) {
            const Rat pw = cell_residual_power(members, span_count, cells.cell(i), ip);
            if (pw > worst_power) {
                worst_power = pw;
                worst = i;
            }
        }
        const Interval D = cells.cell(worst);
        Rat cut = (D.lo + D.hi) / 2;
        for (size_t i = 0; i < span_count; ++i)
            for (const auto& piece : members[i].pieces())
                for (const Rat* b : {&piece.lo, &piece.hi})
                    if (D.lo < *b && *b < D.hi) cut = *b;
        cells = cells.refined_with({cut});
    }
    throw std::runtime_error("refine_block: residual did not concentrate below threshold");
}

}  // namespace

PartitionPlan build_partition(const TranslateSystem& sys, const DualSystem& duals,
                              double epsilon, uint64_t seed) {
    if (!(epsilon > 0)) throw std::invalid_argument("build_partition requires epsilon > 0");
    if (!sys.p().is_integer())
        throw std::invalid_argument("build_partition certificates require integer p");
    const long ip = sys.p().integer();
    const size_t N = sys.size();
    const std::vector<StepFunction> members = sys.members();
    if (duals.duals.size() != N) throw std::invalid_argument("build_partition: dual count");

    PartitionPlan plan;
    const Rat eps_r = exact_from_double(epsilon);

    // lower l_q bound of the coefficient map, from unit vectors and draws
    double K_lq = 0.0;
    {
        const double q = sys.p().value() == 1.0 ? -1.0 : sys.p().value() / (sys.p().value() - 1.0);
        Rng rng(derive_seed(seed, 0x10));
        for (size_t trial = 0; trial < 64 + N; ++trial) {
            std::vector<Rat> a(N, Rat(0));
            if (trial < N)
                a[trial] = 1;
            else
                for (auto& v : a) v = rat(std::lround(64.0 * rng.gaussian()), 64);
            const StepFunction f = lin_comb(a, members);
            const double nf = lp_norm(f, sys.p());
            if (nf <= 0) continue;
            double coef;
            if (q < 0) {
                coef = 0.0;
                for (const auto& v : a) coef = std::max(coef, std::fabs(to_d(v)));
            } else {
                coef = 0.0;
                for (const auto& v : a) coef += std::pow(std::fabs(to_d(v)), q);
                coef = std::pow(coef, 1.0 / q);
            }
            K_lq = std::max(K_lq, coef / nf);
        }
    }
    plan.lower_lq_K = K_lq;
    const Rat K_lq_r = exact_from_double(K_lq);

    // tail of the restricted mass from member index n (0-based, exclusive)
    const auto tail_from = [&](size_t n, const Interval& I) {
        Rat t(0);
        for (size_t i = n; i < N; ++i) t += lp_norm_power_exact(restrict(members[i], I), ip);
        return t;
    };
    const auto support_radius = [&](size_t upto) {
        Rat m(1);
        for (size_t i = 0; i < upto; ++i)
            if (auto h = members[i].support_hull()) {
                m = std::max(m, rat_abs(h->lo));
                m = std::max(m, rat_abs(h->hi));
            }
        return Rat(rat_ceil(m));
    };

    // stage escalation: n_k grows until every member is covered
    std::vector<size_t> n_k{1};
    std::vector<Rat> m_k{support_radius(1)};
    {
        int k = 1;
        while (n_k.back() < N) {
            ++k;
            const Rat tau = eps_r * rat(1, 1L << std::min(k, 60));
            const Rat tau_p = rat_pow(tau, static_cast<unsigned long>(ip));
            const Rat K_p = rat_pow(K_lq_r, static_cast<unsigned long>(ip));
            const Interval I_prev(-m_k.back(), m_k.back());
            size_t next = n_k.back() + 1;
            while (next < N && K_p * tail_from(next, I_prev) > tau_p) ++next;
            plan.tail_certs.push_back({k, next, m_k.back(), tail_from(next, I_prev), K_p, tau_p});
            n_k.push_back(next);
            m_k.push_back(std::max(support_radius(next), Rat(m_k.back() + 1)));
        }
    }
    plan.n_k = n_k;
    plan.m_k = m_k;

    // per-block partitions with certified conditional-expectation residuals
    const Rat K_dual_r = exact_from_double(std::max(duals.bound_K, 1.0));
    std::vector<Rat> all_cuts;
    const size_t stages = n_k.size();
    for (size_t k = 1; k <= stages; ++k) {
        const Rat tau = eps_r * rat(1, 1L << std::min<size_t>(k, 60));
        const size_t span_count = k < stages ? n_k[k] : N;  // n_{k+1}, capped at N
        std::vector<Interval> blocks;
        if (k == 1) {
            blocks.emplace_back(-m_k[0], m_k[0]);
        } else {
            blocks.emplace_back(-m_k[k - 1], -m_k[k - 2]);
            blocks.emplace_back(m_k[k - 2], m_k[k - 1]);
        }
        for (const Interval& A : blocks) {
            Rat residual;
            const Partition cells =
                refine_block(members, span_count, A, ip, K_dual_r, tau, residual);
            plan.block_certs.push_back({static_cast<int>(k), span_count, A.lo, A.hi,
                                        cells.cuts(), residual, tau});
            all_cuts.insert(all_cuts.end(), cells.cuts().begin(), cells.cuts().end());
        }
    }
    std::sort(all_cuts.begin(), all_cuts.end());
    all_cuts.erase(std::unique(all_cuts.begin(), all_cuts.end()), all_cuts.end());
    plan.partition = Partition(std::move(all_cuts));

    // frame constant: max prefix-projection ratio over seeded samples
    {
        Rng rng(derive_seed(seed, 0x20));
        double C = 1.0;
        for (size_t trial = 0; trial < 64; ++trial) {
            std::vector<Rat> a(N);
            for (auto& v : a) v = rat(std::lround(64.0 * rng.gaussian()), 64);
            const StepFunction f = lin_comb(a, members);
            const double nf = lp_norm(f, sys.p());
            if (nf <= 0) continue;
            for (size_t n = 1; n < N; ++n) {
                std::vector<Rat> head(a.begin(), a.begin() + static_cast<long>(n));
                std::vector<StepFunction> headf(members.begin(),
                                                members.begin() + static_cast<long>(n));
                C = std::max(C, lp_norm(lin_comb(head, headf), sys.p()) / nf);
            }
        }
        plan.frame_constant = C;
    }
    return plan;
}

EmbeddingReport distortion_report(const TranslateSystem& sys, const Partition& pi,
                                  const PNorm& p, uint64_t trials, uint64_t seed,
                                  const Rat& restriction_c) {
    const std::vector<StepFunction> members = sys.members();
    const size_t N = members.size();
    EmbeddingReport rep;
    rep.partition_cuts = pi.cuts();
    rep.restriction_c = restriction_c;
    rep.min_ratio = 2.0;
    rep.max_ratio = 0.0;
    rep.restriction_inf = 1.0;

    const Interval window_c(-restriction_c, restriction_c);
    uint64_t id = 0;
    const auto consider = [&](const std::vector<Rat>& a) {
        const StepFunction f = lin_comb(a, members);
        const Scalar fp = lp_norm_power(f, p);
        if (fp.approx <= 0) return;
        const Scalar cp = coords_lp_power(f, pi, p);
        double ratio;
        if (fp.exact && cp.exact)
            ratio = std::pow(to_d(cp.value / fp.value), 1.0 / p.value());
        else
            ratio = std::pow(cp.approx / fp.approx, 1.0 / p.value());
        rep.ratios.emplace_back(id, ratio);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        const double restr =
            std::pow(lp_norm_power(restrict(f, window_c), p).approx / fp.approx, 1.0 / p.value());
        rep.restriction_inf = std::min(rep.restriction_inf, restr);
        ++id;
    };

    for (size_t i = 0; i < N; ++i) {
        std::vector<Rat> e(N, Rat(0));
        e[i] = 1;
        consider(e);
    }
    consider(std::vector<Rat>(N, Rat(1)));
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::vector<Rat> a(N);
        if (t % 2 == 0)
            for (auto& v : a) v = Rat(rng.sign());
        else
            for (auto& v : a) v = rat(std::lround(64.0 * rng.gaussian()), 64);
        consider(a);
    }
    return rep;
}

}  // namespace translab
