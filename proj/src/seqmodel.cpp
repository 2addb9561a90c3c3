// translab/seqmodel.cpp
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

#include "translab/seqmodel.hpp"

#include <algorithm>
#include <cmath>

#include "translab/rng.hpp"

namespace translab {

void RadCombo::add(long j, double c) {
    if (c == 0.0) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), j,
                               [](const auto& t, long v) { return t.first < v; });
    if (it != terms.end() && it->first == j) {
        it->second += c;
        if (it->second == 0.0) terms.erase(it);
        return;
    }
    terms.insert(it, {j, c});
}

std::vector<double> RadCombo::coefficients() const {
    std::vector<double> c(terms.size());
    for (size_t i = 0; i < terms.size(); ++i) c[i] = terms[i].second;
    return c;
}

void HaarRadSum::add(long n, long j, double c) {
    if (c == 0.0) return;
    auto key = std::pair(n, j);
    auto it = std::lower_bound(terms.begin(), terms.end(), key, [](const Term& t, const auto& v) {
        return std::pair(t.haar_n, t.rad_j) < v;
    });
    if (it != terms.end() && it->haar_n == n && it->rad_j == j) {
        it->coef += c;
        if (it->coef == 0.0) terms.erase(it);
        return;
    }
    terms.insert(it, {n, j, c});
}

long haar_resolution(long n) { return n == 1 ? 0 : haar_level(n) + 1; }

int haar_atom_value(long n, long atom, long K) {
    if (n == 1) return 1;
    const long k = haar_level(n);
    if (K < k + 1) throw std::invalid_argument("haar_atom_value: atom grid too coarse");
    const long j = n - (1L << k) - 1;
    if ((atom >> (K - k)) != j) return 0;
    return ((atom >> (K - k - 1)) & 1) ? -1 : 1;
}

Scalar coord_norm_power(const StepFunction& f, const PNorm& p, const MomentPolicy&) {
    return lp_norm_power(f, p);
}

Scalar coord_norm_power(const RadCombo& f, const PNorm& p, const MomentPolicy& policy) {
    if (f.is_zero()) return Scalar::from_rat(Rat(0));
    // distinct Rademacher indices are independent signs under dt
    return Scalar::from_double(rademacher_moment_d(f.coefficients(), p, policy).value);
}

Scalar coord_norm_power(const HaarRadSum& f, const PNorm& p, const MomentPolicy& policy) {
    if (f.is_zero()) return Scalar::from_rat(Rat(0));
    long K = 0;
    for (const auto& t : f.terms) K = std::max(K, haar_resolution(t.haar_n));
    const long atoms = 1L << K;
    double total = 0.0;
    std::vector<double> coeff;
    for (long atom = 0; atom < atoms; ++atom) {
        // collapse the s-variable: per atom the t-section is a Rademacher sum
        coeff.clear();
        std::map<long, double> per_j;
        for (const auto& t : f.terms) {
            const int hv = haar_atom_value(t.haar_n, atom, K);
            if (hv != 0) per_j[t.rad_j] += t.coef * hv;
        }
        for (const auto& [j, c] : per_j)
            if (c != 0.0) coeff.push_back(c);
        if (coeff.empty()) continue;
        MomentPolicy atom_policy = policy;
        atom_policy.seed = derive_seed(policy.seed, static_cast<uint64_t>(atom));
        total += rademacher_moment_d(coeff, p, atom_policy).value;
    }
    return Scalar::from_double(total / static_cast<double>(atoms));
}

SeqElement<RadCombo> seq_lin_comb(std::span<const double> coeffs,
                                  std::span<const SeqElement<RadCombo>> elems) {
    if (coeffs.size() != elems.size()) throw std::invalid_argument("seq_lin_comb: length mismatch");
    std::map<Int, RadCombo> acc;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        for (const auto& [idx, c] : elems[i].coords())
            for (const auto& [j, v] : c.terms) acc[idx].add(j, coeffs[i] * v);
    }
    SeqElement<RadCombo> out;
    for (auto& [idx, c] : acc) out.set(idx, std::move(c));
    return out;
}

SeqElement<HaarRadSum> seq_lin_comb(std::span<const double> coeffs,
                                    std::span<const SeqElement<HaarRadSum>> elems) {
    if (coeffs.size() != elems.size()) throw std::invalid_argument("seq_lin_comb: length mismatch");
    std::map<Int, HaarRadSum> acc;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        for (const auto& [idx, c] : elems[i].coords())
            for (const auto& t : c.terms) acc[idx].add(t.haar_n, t.rad_j, coeffs[i] * t.coef);
    }
    SeqElement<HaarRadSum> out;
    for (auto& [idx, c] : acc) out.set(idx, std::move(c));
    return out;
}

SeqElement<StepFunction> seq_lin_comb(std::span<const Rat> coeffs,
                                      std::span<const SeqElement<StepFunction>> elems) {
    if (coeffs.size() != elems.size()) throw std::invalid_argument("seq_lin_comb: length mismatch");
    std::map<Int, StepFunction> acc;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (const auto& [idx, c] : elems[i].coords()) {
            auto [it, fresh] = acc.try_emplace(idx);
            it->second = fresh ? scale(c, coeffs[i]) : it->second + scale(c, coeffs[i]);
        }
    }
    SeqElement<StepFunction> out;
    for (auto& [idx, c] : acc) out.set(idx, std::move(c));
    return out;
}

Rat pairing(const SeqElement<StepFunction>& f, const SeqElement<StepFunction>& g) {
    Rat s(0);
    for (const auto& [idx, c] : f.coords())
        if (const StepFunction* other = g.at(idx)) s += inner_l2(c, *other);
    return s;
}

double pairing(const SeqElement<RadCombo>& f, const SeqElement<RadCombo>& g) {
    // Rademacher functions are orthonormal in L_2[0,1]
    double s = 0.0;
    for (const auto& [idx, c] : f.coords()) {
        const RadCombo* other = g.at(idx);
        if (!other) continue;
        size_t a = 0, b = 0;
        while (a < c.terms.size() && b < other->terms.size()) {
            if (c.terms[a].first < other->terms[b].first)
                ++a;
            else if (c.terms[a].first > other->terms[b].first)
                ++b;
            else
                s += c.terms[a++].second * other->terms[b++].second;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------

long BlockScheme::block_of(long j) const {
    for (size_t n = 0; n < blocks.size(); ++n)
        if (blocks[n].first <= j && j <= blocks[n].second) return static_cast<long>(n) + 1;
    throw std::out_of_range("BlockScheme::block_of");
}

Rat BlockScheme::eps_power_sum(long n, long p) const {
    const auto [lo, hi] = blocks.at(static_cast<size_t>(n - 1));
    Rat s(0);
    for (long j = lo; j <= hi; ++j) s += rat_pow(eps[static_cast<size_t>(j - 1)],
                                                 static_cast<unsigned long>(p));
    return s;
}

Rat BlockScheme::eps_power_sum_all(long p) const {
    Rat s(0);
    for (const auto& e : eps) s += rat_pow(e, static_cast<unsigned long>(p));
    return s;
}

BlockScheme make_block_scheme(const std::vector<long>& sizes) {
    if (sizes.empty()) throw std::invalid_argument("block scheme needs at least one block");
    BlockScheme sch;
    sch.sizes = sizes;
    long next = 1;
    for (long size : sizes) {
        const long root = std::lround(std::pow(static_cast<double>(size), 0.25));
        if (root * root * root * root != size)
            throw std::invalid_argument("block sizes must be fourth powers");
        sch.blocks.emplace_back(next, next + size - 1);
        for (long j = 0; j < size; ++j) sch.eps.push_back(rat(1, root));
        next += size;
    }
    return sch;
}

Int pow3(long j) {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 3, static_cast<unsigned long>(j));
    return v;
}

Thm213System::Thm213System(PNorm p, BlockScheme scheme)
    : p_(p), scheme_(std::move(scheme)) {
    if (!(p_.value() > 4.0)) throw std::domain_error("Thm213System requires p > 4");
    for (long j = 1; j <= scheme_.total(); ++j) {
        const long n = scheme_.block_of(j);
        const long level = haar_level(n);
        // normalized Haar factor 2^{level/p} folded into the coefficient
        const double coef =
            to_d(scheme_.eps[static_cast<size_t>(j - 1)]) *
            std::pow(2.0, static_cast<double>(level) / p_.value());
        HaarRadSum c;
        c.add(n, j, coef);
        base_.set(pow3(j), std::move(c));
    }
}

SeqElement<HaarRadSum> Thm213System::translate_j(long j) const {
    return base_.shifted(-pow3(j));
}

SeqElement<HaarRadSum> Thm213System::block_vector(long n) const {
    const auto [lo, hi] = scheme_.blocks.at(static_cast<size_t>(n - 1));
    std::vector<double> c;
    std::vector<SeqElement<HaarRadSum>> t;
    for (long j = lo; j <= hi; ++j) {
        c.push_back(to_d(scheme_.eps[static_cast<size_t>(j - 1)]));
        t.push_back(translate_j(j));
    }
    return seq_lin_comb(c, t);
}

SeqElement<HaarRadSum> Thm213System::combo(std::span<const double> a) const {
    if (static_cast<long>(a.size()) != scheme_.total())
        throw std::invalid_argument("Thm213System::combo: coefficient count");
    std::vector<SeqElement<HaarRadSum>> t;
    t.reserve(a.size());
    for (long j = 1; j <= scheme_.total(); ++j) t.push_back(translate_j(j));
    return seq_lin_comb(std::vector<double>(a.begin(), a.end()), t);
}

Thm213System thm213_build(const PNorm& p, BlockScheme scheme) {
    return Thm213System(p, std::move(scheme));
}

double haar_combo_pnorm_power(std::span<const double> d, const PNorm& p) {
    long K = 0;
    for (size_t n = 1; n <= d.size(); ++n)
        if (d[n - 1] != 0.0) K = std::max(K, haar_resolution(static_cast<long>(n)));
    const long atoms = 1L << K;
    double total = 0.0;
    for (long atom = 0; atom < atoms; ++atom) {
        double v = 0.0;
        for (size_t n = 1; n <= d.size(); ++n) {
            if (d[n - 1] == 0.0) continue;
            const int hv = haar_atom_value(static_cast<long>(n), atom, K);
            if (hv == 0) continue;
            const double norm_scale =
                std::pow(2.0, static_cast<double>(haar_level(static_cast<long>(n))) / p.value());
            v += d[n - 1] * norm_scale * hv;
        }
        total += std::pow(std::fabs(v), p.value());
    }
    return total / static_cast<double>(atoms);
}

NormFormulaReport norm_formula_219(const Thm213System& sys, std::span<const double> a,
                                   const MomentPolicy& policy) {
    NormFormulaReport rep;
    rep.lhs = seq_pnorm_power(sys.combo(a), sys.p(), policy).approx;

    const auto& sch = sys.scheme();
    std::vector<double> d(sch.blocks.size());
    for (size_t n = 0; n < sch.blocks.size(); ++n) {
        double s = 0.0;
        for (long j = sch.blocks[n].first; j <= sch.blocks[n].second; ++j) {
            const double e = to_d(sch.eps[static_cast<size_t>(j - 1)]);
            const double aj = a[static_cast<size_t>(j - 1)];
            s += aj * aj * e * e;
        }
        d[n] = std::sqrt(s);
    }
    rep.haar_part = haar_combo_pnorm_power(d, sys.p());
    rep.lp_part = 0.0;
    for (double aj : a) rep.lp_part += std::pow(std::fabs(aj), sys.p().value());
    rep.rhs = rep.haar_part + rep.lp_part;
    rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------

Ex217System::Ex217System(PNorm p, long n_max) : p_(p), n_max_(n_max) {
    if (!(p_.value() > 4.0)) throw std::domain_error("Ex217System requires p > 4");
    if (n_max < 2) throw std::domain_error("Ex217System requires n_max >= 2");
    for (long j = 1; j <= n_max; ++j) {
        RadCombo c;
        c.add(j, a(j - 1));
        c.add(j + 1, -a(j + 1));
        base_.set(pow3(j), std::move(c));
    }
}

double Ex217System::a(long j) const {
    if (j < 0) throw std::out_of_range("Ex217System::a");
    return j == 0 ? 1.0 : std::pow(static_cast<double>(j), -0.25);
}

SeqElement<RadCombo> Ex217System::translate_j(long j) const { return base_.shifted(-pow3(j)); }

SeqElement<RadCombo> Ex217System::combo(std::span<const double> b) const {
    if (static_cast<long>(b.size()) != n_max_)
        throw std::invalid_argument("Ex217System::combo: coefficient count");
    std::vector<SeqElement<RadCombo>> t;
    t.reserve(b.size());
    for (long j = 1; j <= n_max_; ++j) t.push_back(translate_j(j));
    return seq_lin_comb(std::vector<double>(b.begin(), b.end()), t);
}

RadCombo Ex217System::coordinate0(std::span<const double> b) const {
    const SeqElement<RadCombo> g = combo(b);
    const RadCombo* c = g.at(Int(0));
    return c ? *c : RadCombo{};
}

Ex217System ex217_build(const PNorm& p, long n_max) { return Ex217System(p, n_max); }

// ---------------------------------------------------------------------------
// torus

namespace {

struct UnitExp {  // e^{i pi r}
    bool exact = false;
    RatC exact_value;
    std::complex<double> approx;
};

UnitExp unit_exp_pi(const Rat& r) {
    UnitExp u;
    if (r.get_den() == 1) {
        u.exact = true;
        const bool odd = mpz_odd_p(r.get_num().get_mpz_t());
        u.exact_value = {Rat(odd ? -1 : 1), Rat(0)};
        u.approx = {odd ? -1.0 : 1.0, 0.0};
        return u;
    }
    if (r.get_den() == 2) {
        u.exact = true;
        // numerator odd; num mod 4 in {1,3} decides the sign of i
        Int num_mod;
        mpz_mod_ui(num_mod.get_mpz_t(), r.get_num().get_mpz_t(), 4);
        const bool plus_i = (num_mod == 1);
        u.exact_value = {Rat(0), Rat(plus_i ? 1 : -1)};
        u.approx = {0.0, plus_i ? 1.0 : -1.0};
        return u;
    }
    const double th = 3.14159265358979323846264338328 * to_d(r);
    u.approx = {std::cos(th), std::sin(th)};
    return u;
}

RatC ratc_mul(const RatC& a, const RatC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
RatC ratc_conj(const RatC& a) { return {a.re, -a.im}; }
RatC ratc_add(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
RatC ratc_sub(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
std::complex<double> ratc_d(const RatC& a) { return {to_d(a.re), to_d(a.im)}; }

}  // namespace

std::complex<double> TorusScalar::value() const {
    constexpr double pi = 3.14159265358979323846264338328;
    return pi * ratc_d(pi_coeff) + ratc_d(plain_coeff) + extra;
}

TorusScalar torus_inner(const TorusFunction& u, const TorusFunction& v) {
    TorusScalar out;
    out.pi_coeff = {Rat(0), Rat(0)};
    out.plain_coeff = {Rat(0), Rat(0)};

    // trig x trig: integral e^{i(n-m)t} dt over the period is 2 pi delta_{nm}
    for (const auto& [n, xi] : u.trig) {
        auto it = v.trig.find(n);
        if (it == v.trig.end()) continue;
        out.pi_coeff =
            ratc_add(out.pi_coeff, ratc_mul(RatC{Rat(2), Rat(0)}, ratc_mul(xi, ratc_conj(it->second))));
    }

    // step x step: plain overlap, scaled by pi from the change of variable
    if (!u.step_over_pi.is_zero() && !v.step_over_pi.is_zero())
        out.pi_coeff =
            ratc_add(out.pi_coeff, RatC{inner_l2(u.step_over_pi, v.step_over_pi), Rat(0)});

    // trig x step and step x trig
    const auto cross = [&out](const std::map<long, RatC>& trig, const StepFunction& step,
                              bool conj_trig) {
        for (const auto& [n, xi0] : trig) {
            const RatC xi = conj_trig ? ratc_conj(xi0) : xi0;
            for (const auto& piece : step.pieces()) {
                const RatC vv = {piece.value, Rat(0)};  // step parts are real
                if (n == 0) {
                    out.pi_coeff =
                        ratc_add(out.pi_coeff, ratc_mul(xi, ratc_mul(vv, {piece.hi - piece.lo, Rat(0)})));
                    continue;
                }
                // integral over [a pi, b pi] of e^{+-int} dt
                const long sgn = conj_trig ? -n : n;
                const UnitExp ea = unit_exp_pi(Rat(sgn) * piece.lo);
                const UnitExp eb = unit_exp_pi(Rat(sgn) * piece.hi);
                if (ea.exact && eb.exact) {
                    // (E_b - E_a) / (i sgn): divide by i*sgn exactly
                    RatC diff = ratc_sub(eb.exact_value, ea.exact_value);
                    RatC divided = {diff.im / sgn, -diff.re / sgn};
                    out.plain_coeff = ratc_add(out.plain_coeff, ratc_mul(xi, ratc_mul(vv, divided)));
                } else {
                    const std::complex<double> diff = eb.approx - ea.approx;
                    const std::complex<double> divided = diff / std::complex<double>(0.0, sgn);
                    out.extra += ratc_d(xi) * ratc_d(vv) * divided;
                }
            }
        }
    };
    cross(u.trig, v.step_over_pi, false);
    cross(v.trig, u.step_over_pi, true);
    return out;
}

TorusFunction torus_transform(const SeqVec& x) {
    TorusFunction f;
    for (const auto& [n, xi] : x)
        if (xi != 0) f.trig[n] = {xi, Rat(0)};
    return f;
}

SeqVec seq_shift(const SeqVec& x, long k) {
    SeqVec out;
    for (const auto& [n, xi] : x) out[n + k] = xi;
    return out;
}

DistanceResult shift_span_distance_l2(const SeqVec& x, const SeqVec& target,
                                      const std::vector<long>& shifts) {
    const auto inner = [](const SeqVec& a, const SeqVec& b) {
        Rat s(0);
        for (const auto& [n, v] : a) {
            auto it = b.find(n);
            if (it != b.end()) s += v * it->second;
        }
        return s;
    };
    const size_t m = shifts.size();
    std::vector<SeqVec> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = seq_shift(x, shifts[i]);
    RatMat G(m, RatVec(m));
    RatVec b(m);
    for (size_t i = 0; i < m; ++i) {
        b[i] = inner(target, basis[i]);
        for (size_t j = 0; j <= i; ++j) {
            G[i][j] = inner(basis[i], basis[j]);
            G[j][i] = G[i][j];
        }
    }
    const RatVec c = solve_pseudo(G, b);
    Rat d2 = inner(target, target) - dot(c, b);
    if (d2 < 0) d2 = 0;
    return {d2, std::sqrt(to_d(d2))};
}

}  // namespace translab
