// translab/systems.cpp
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

#include "translab/systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "translab/rng.hpp"

namespace translab {

TranslateSystem::TranslateSystem(StepFunction base, std::vector<Rat> lambdas, PNorm p)
    : base_(std::move(base)), lambdas_(std::move(lambdas)), p_(p) {
    if (lambdas_.empty()) throw std::invalid_argument("TranslateSystem: empty Lambda");
    if (lambdas_.size() > kMaxTranslates)
        throw std::invalid_argument("TranslateSystem: translate cap exceeded");
    for (size_t i = 1; i < lambdas_.size(); ++i)
        if (!(lambdas_[i - 1] < lambdas_[i]))
            throw std::invalid_argument("TranslateSystem: Lambda must be strictly increasing");
}

std::vector<StepFunction> TranslateSystem::members() const {
    std::vector<StepFunction> out;
    out.reserve(lambdas_.size());
    for (const auto& l : lambdas_) out.push_back(translate(base_, l));
    return out;
}

Rat separation(const std::vector<Rat>& lambdas) {
    if (lambdas.size() < 2) throw std::invalid_argument("separation needs >= 2 points");
    std::vector<Rat> sorted = lambdas;
    std::sort(sorted.begin(), sorted.end());
    Rat best = sorted[1] - sorted[0];
    for (size_t i = 1; i + 1 < sorted.size(); ++i)
        best = std::min(best, Rat(sorted[i + 1] - sorted[i]));
    if (best == 0) throw std::invalid_argument("separation: duplicate translation point");
    return best;
}

TailMassReport tail_mass(const TranslateSystem& sys, const Interval& I) {
    TailMassReport rep;
    const PNorm& p = sys.p();
    if (sys.size() >= 2) {
        const Rat eps0 = separation(sys.lambdas());
        rep.cells = rat_ceil(I.length() / eps0);
    } else {
        rep.cells = 1;
    }
    if (p.is_integer()) {
        const long ip = p.integer();
        Rat total(0);
        for (size_t i = 0; i < sys.size(); ++i)
            total += lp_norm_power_exact(restrict(sys.member(i), I), ip);
        rep.value = Scalar::from_rat(total);
        rep.bound = Scalar::from_rat(Rat(rep.cells) * lp_norm_power_exact(sys.base(), ip));
        rep.within = rep.value.value <= rep.bound.value;
        if (!rep.within) throw std::logic_error("tail_mass: certified bound violated");
    } else {
        double total = 0;
        for (size_t i = 0; i < sys.size(); ++i)
            total += lp_norm_power(restrict(sys.member(i), I), p).approx;
        rep.value = Scalar::from_double(total);
        rep.bound = Scalar::from_double(to_d(Rat(rep.cells)) * lp_norm_power(sys.base(), p).approx);
        rep.within = rep.value.approx <= rep.bound.approx * (1 + 1e-12);
    }
    return rep;
}

RatMat gram_l2(const std::vector<StepFunction>& fns) {
    const size_t n = fns.size();
    RatMat G(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            G[i][j] = inner_l2(fns[i], fns[j]);
            if (j != i) G[j][i] = G[i][j];
        }
    return G;
}

DistanceResult distance_to_span_l2(const StepFunction& target,
                                   const std::vector<StepFunction>& fns) {
    const RatMat G = gram_l2(fns);
    RatVec b(fns.size());
    for (size_t i = 0; i < fns.size(); ++i) b[i] = inner_l2(target, fns[i]);
    const RatVec c = solve_pseudo(G, b);
    Rat d2 = inner_l2(target, target) - dot(c, b);
    if (d2 < 0) d2 = 0;  // exact arithmetic: only reachable through a zero target
    return {d2, std::sqrt(to_d(d2))};
}

DistanceResult minimality_distance_l2(const TranslateSystem& sys, size_t i,
                                      const std::vector<size_t>& window) {
    if (std::find(window.begin(), window.end(), i) == window.end())
        throw std::invalid_argument("minimality_distance_l2: i must belong to the window");
    std::vector<StepFunction> others;
    others.reserve(window.size() - 1);
    for (size_t j : window)
        if (j != i) others.push_back(sys.member(j));
    return distance_to_span_l2(sys.member(i), others);
}

namespace {

// all functions sampled on their merged grid; doubles drive the searches,
// rational re-evaluation certifies the winner
struct CellTable {
    std::vector<std::vector<double>> value;  // [fn][cell]
    std::vector<double> len;

    explicit CellTable(const std::vector<StepFunction>& fns) {
        std::vector<Rat> cuts;
        for (const auto& f : fns)
            for (const auto& piece : f.pieces()) {
                cuts.push_back(piece.lo);
                cuts.push_back(piece.hi);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const size_t cells = cuts.empty() ? 0 : cuts.size() - 1;
        len.resize(cells);
        for (size_t c = 0; c < cells; ++c) len[c] = to_d(cuts[c + 1] - cuts[c]);
        value.assign(fns.size(), std::vector<double>(cells, 0.0));
        for (size_t j = 0; j < fns.size(); ++j)
            for (size_t c = 0; c < cells; ++c) value[j][c] = to_d(fns[j].eval(cuts[c]));
    }

    double norm_power(const std::vector<double>& cellsum, double p, long ip,
                      bool integral) const {
        double acc = 0.0;
        for (size_t c = 0; c < len.size(); ++c) {
            double a = std::fabs(cellsum[c]);
            double v;
            if (integral) {
                v = 1.0;
                for (long k = 0; k < ip; ++k) v *= a;
            } else {
                v = std::pow(a, p);
            }
            acc += v * len[c];
        }
        return acc;
    }
};

std::vector<Rat> draw_coefficients(size_t n, Rng& rng, bool spiky) {
    std::vector<Rat> a(n);
    bool nonzero = false;
    for (size_t i = 0; i < n; ++i) {
        if (spiky) {
            a[i] = Rat(rng.sign());
        } else {
            // Gaussian quantized to 64ths so that witnesses stay rational
            const long q = std::lround(64.0 * rng.gaussian());
            a[i] = rat(q, 64);
        }
        if (a[i] != 0) nonzero = true;
    }
    if (!nonzero) a[0] = 1;
    return a;
}

}  // namespace

Scalar sign_ratio_power(const std::vector<StepFunction>& fns, const PNorm& p,
                        const std::vector<Rat>& coeffs, const std::vector<int>& signs) {
    if (coeffs.size() != fns.size() || signs.size() != fns.size())
        throw std::invalid_argument("sign_ratio_power: length mismatch");
    std::vector<Rat> flipped(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) flipped[i] = signs[i] < 0 ? -coeffs[i] : coeffs[i];
    const StepFunction num = lin_comb(flipped, fns);
    const StepFunction den = lin_comb(coeffs, fns);
    if (p.is_integer()) {
        const Rat dp = lp_norm_power_exact(den, p.integer());
        if (dp == 0) throw std::domain_error("sign_ratio_power: zero denominator");
        return Scalar::from_rat(lp_norm_power_exact(num, p.integer()) / dp);
    }
    const double dp = lp_norm_power(den, p).approx;
    if (dp == 0) throw std::domain_error("sign_ratio_power: zero denominator");
    return Scalar::from_double(lp_norm_power(num, p).approx / dp);
}

Scalar prefix_ratio_power(const std::vector<StepFunction>& fns, const PNorm& p,
                          const std::vector<Rat>& coeffs, size_t prefix) {
    if (coeffs.size() != fns.size() || prefix > fns.size())
        throw std::invalid_argument("prefix_ratio_power: length mismatch");
    std::vector<Rat> head(coeffs.begin(), coeffs.begin() + static_cast<long>(prefix));
    std::vector<StepFunction> headf(fns.begin(), fns.begin() + static_cast<long>(prefix));
    const StepFunction num = lin_comb(head, headf);
    const StepFunction den = lin_comb(coeffs, fns);
    if (p.is_integer()) {
        const Rat dp = lp_norm_power_exact(den, p.integer());
        if (dp == 0) throw std::domain_error("prefix_ratio_power: zero denominator");
        return Scalar::from_rat(lp_norm_power_exact(num, p.integer()) / dp);
    }
    const double dp = lp_norm_power(den, p).approx;
    if (dp == 0) throw std::domain_error("prefix_ratio_power: zero denominator");
    return Scalar::from_double(lp_norm_power(num, p).approx / dp);
}

ConstantEstimate unconditional_constant_lb(const std::vector<StepFunction>& fns,
                                           const PNorm& p, SearchMode mode, uint64_t trials,
                                           uint64_t seed) {
    const size_t n = fns.size();
    if (n == 0) throw std::invalid_argument("unconditional_constant_lb: empty system");
    if (mode == SearchMode::enumerate && n > kSignEnumCap)
        throw std::invalid_argument("unconditional_constant_lb: enumeration cap exceeded");

    const CellTable table(fns);
    const double pv = p.value();
    const long ip = p.is_integer() ? p.integer() : 0;
    const size_t cells = table.len.size();

    double best_ratio = -1.0;
    std::vector<Rat> best_coeffs;
    std::vector<int> best_signs;

    // structured witnesses first, then seeded draws
    std::vector<std::vector<Rat>> candidates;
    candidates.emplace_back(n, Rat(1));
    {
        std::vector<Rat> alt(n);
        for (size_t i = 0; i < n; ++i) alt[i] = Rat(i % 2 == 0 ? 1 : -1);
        candidates.push_back(std::move(alt));
    }
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        candidates.push_back(draw_coefficients(n, rng, t % 2 == 0));
    }

    std::vector<double> sum(cells), flip_sum(cells);
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
        const auto& a = candidates[ci];
        std::vector<double> ad(n);
        for (size_t i = 0; i < n; ++i) ad[i] = to_d(a[i]);
        std::fill(sum.begin(), sum.end(), 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t c = 0; c < cells; ++c) sum[c] += ad[i] * table.value[i][c];
        const double den = table.norm_power(sum, pv, ip, p.is_integer());
        if (den <= 0) continue;

        double best_num = den;  // all-plus pattern
        std::vector<int> signs(n, 1), best_here(n, 1);
        flip_sum = sum;
        if (mode == SearchMode::enumerate) {
            // Gray code over sign flips of indices 1..n-1 (global flip is norm
            // neutral, so index 0 stays positive)
            const uint64_t patterns = n == 1 ? 1 : (uint64_t{1} << (n - 1));
            for (uint64_t t = 1; t < patterns; ++t) {
                const size_t j = static_cast<size_t>(std::countr_zero(t)) + 1;
                signs[j] = -signs[j];
                const double delta = 2.0 * static_cast<double>(signs[j]) * ad[j];
                for (size_t c = 0; c < cells; ++c) flip_sum[c] += delta * table.value[j][c];
                const double num = table.norm_power(flip_sum, pv, ip, p.is_integer());
                if (num > best_num) {
                    best_num = num;
                    best_here = signs;
                }
            }
        } else {
            Rng rng(derive_seed(seed ^ 0x5ca1ab1eULL, ci));
            const uint64_t draws = 256;
            for (uint64_t t = 0; t < draws; ++t) {
                for (size_t i = 0; i < n; ++i) signs[i] = rng.sign();
                for (size_t c = 0; c < cells; ++c) {
                    double s = 0.0;
                    for (size_t i = 0; i < n; ++i) s += signs[i] * ad[i] * table.value[i][c];
                    flip_sum[c] = s;
                }
                const double num = table.norm_power(flip_sum, pv, ip, p.is_integer());
                if (num > best_num) {
                    best_num = num;
                    best_here = signs;
                }
            }
        }
        const double ratio = std::pow(best_num / den, 1.0 / pv);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_coeffs = a;
            best_signs = best_here;
        }
    }
    if (best_ratio < 0) throw std::domain_error("unconditional_constant_lb: degenerate system");

    ConstantEstimate est;
    est.coeffs = std::move(best_coeffs);
    est.signs = std::move(best_signs);
    est.mode = mode;
    est.trials = trials;
    est.seed = seed;
    est.ratio_power = sign_ratio_power(fns, p, est.coeffs, est.signs);
    est.lower_bound = std::pow(est.ratio_power.approx, 1.0 / pv);
    return est;
}

ConstantEstimate basis_constant_lb(const std::vector<StepFunction>& fns, const PNorm& p,
                                   uint64_t trials, uint64_t seed) {
    const size_t n = fns.size();
    if (n == 0) throw std::invalid_argument("basis_constant_lb: empty system");
    if (n == 1) {
        ConstantEstimate est;
        est.lower_bound = 1.0;
        est.coeffs = {Rat(1)};
        est.prefix = 1;
        est.trials = trials;
        est.seed = seed;
        est.ratio_power = prefix_ratio_power(fns, p, est.coeffs, 1);
        return est;
    }
    const CellTable table(fns);
    const double pv = p.value();
    const long ip = p.is_integer() ? p.integer() : 0;
    const size_t cells = table.len.size();

    double best_ratio = -1.0;
    std::vector<Rat> best_coeffs;
    size_t best_prefix = 0;

    std::vector<std::vector<Rat>> candidates;
    candidates.emplace_back(n, Rat(1));
    {
        std::vector<Rat> e1(n, Rat(0));
        e1[0] = 1;  // equality witness for orthogonal systems
        candidates.push_back(std::move(e1));
    }
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        candidates.push_back(draw_coefficients(n, rng, t % 2 == 0));
    }

    std::vector<double> sum(cells);
    std::vector<double> prefix_power(n);
    for (const auto& a : candidates) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (size_t m = 0; m < n; ++m) {
            const double am = to_d(a[m]);
            for (size_t c = 0; c < cells; ++c) sum[c] += am * table.value[m][c];
            prefix_power[m] = table.norm_power(sum, pv, ip, p.is_integer());
        }
        const double den = prefix_power[n - 1];
        if (den <= 0) continue;
        for (size_t m = 0; m + 1 < n; ++m) {
            const double ratio = std::pow(prefix_power[m] / den, 1.0 / pv);
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_coeffs = a;
                best_prefix = m + 1;
            }
        }
    }
    if (best_ratio < 0) throw std::domain_error("basis_constant_lb: degenerate system");

    ConstantEstimate est;
    est.coeffs = std::move(best_coeffs);
    est.prefix = best_prefix;
    est.mode = SearchMode::sample;
    est.trials = trials;
    est.seed = seed;
    est.ratio_power = prefix_ratio_power(fns, p, est.coeffs, est.prefix);
    est.lower_bound = std::pow(est.ratio_power.approx, 1.0 / pv);
    return est;
}

double window_series(const StepFunction& f, const PNorm& p, double r, long n_lo, long n_hi) {
    if (!(r > 0)) throw std::domain_error("window_series requires r > 0");
    double acc = 0.0;
    for (long n = n_lo; n <= n_hi; ++n) {
        const Interval w(rat(n - 1), rat(n));
        const double power = lp_norm_power(restrict(f, w), p).approx;
        if (power > 0) acc += std::pow(power, r / p.value());
    }
    return acc;
}

double series_from_window_norms(const std::vector<double>& norms, double r) {
    if (!(r > 0)) throw std::domain_error("series_from_window_norms requires r > 0");
    double acc = 0.0;
    for (double v : norms) acc += std::pow(v, r);
    return acc;
}

}  // namespace translab
