// translab/dyadic.cpp
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

#include "translab/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "translab/rng.hpp"

namespace translab {

long haar_level(long n) {
    if (n < 1) throw std::domain_error("Haar index must be >= 1");
    if (n == 1) return 0;
    long k = 0;
    while ((1L << (k + 1)) <= n - 1) ++k;  // largest k with 2^k <= n-1
    return k;
}

StepFunction haar(const HaarIndex& idx) {
    const long n = idx.n;
    if (n < 1) throw std::domain_error("Haar index must be >= 1");
    StepFunction h;
    if (n == 1) {
        h = StepFunction::indicator(Interval(Rat(0), Rat(1)));
    } else {
        const long k = haar_level(n);
        const long j = n - (1L << k) - 1;  // 0 <= j < 2^k
        const Rat cell = rat(1, 2L << k);  // 2^-(k+1)
        const Rat lo = rat(2 * j) * cell;
        h = StepFunction::from_pieces({{lo, lo + cell, Rat(1)}, {lo + cell, lo + 2 * cell, Rat(-1)}});
    }
    return idx.shift == 0 ? h : translate(h, Rat(idx.shift));
}

Rat haar_norm_power(long n, long /*p*/) {
    // |h_n| is an indicator, so ||h_n||_p^p is its support measure
    return n == 1 ? Rat(1) : rat(1, 1L << haar_level(n));
}

double RootScalar::approx() const {
    return std::pow(to_d(radicand), 1.0 / static_cast<double>(index));
}

ScaledStep haar_normalized(const HaarIndex& idx, const PNorm& p) {
    if (!p.is_integer())
        throw std::domain_error("haar_normalized keeps exact radicals; integer p required");
    const long k = haar_level(idx.n);
    Rat radicand(1);
    mpz_ui_pow_ui(radicand.get_num_mpz_t(), 2, static_cast<unsigned long>(k));
    return ScaledStep{haar(idx), RootScalar{radicand, p.integer()}};
}

StepFunction rademacher(long n) {
    if (n < 1) throw std::domain_error("Rademacher index must be >= 1");
    const long cells = 1L << (n - 1);
    const Rat w = rat(1, cells);
    std::vector<StepFunction::Piece> ps;
    ps.reserve(cells);
    for (long j = 0; j < cells; ++j)
        ps.push_back({rat(j) * w, rat(j + 1) * w, Rat(j % 2 == 0 ? 1 : -1)});
    return StepFunction::from_pieces(std::move(ps));
}

namespace {

// |x|^p with a fast path for integer exponents
inline double abs_pow_d(double x, double p, long ip, bool integral) {
    double a = std::fabs(x);
    if (!integral) return std::pow(a, p);
    double r = 1.0;
    for (long i = 0; i < ip; ++i) r *= a;
    return r;
}

// Gray-code enumeration with the first sign pinned to +1 (each orbit {s,-s}
// contributes one representative).
template <typename Num, typename Emit>
void enumerate_signed_sums(const std::vector<Num>& a, Emit&& emit) {
    const size_t m = a.size();
    Num s{};
    for (const auto& v : a) s += v;
    emit(s);
    if (m == 1) return;
    const uint64_t patterns = uint64_t{1} << (m - 1);
    uint64_t mask = 0;
    for (uint64_t t = 1; t < patterns; ++t) {
        const int j = std::countr_zero(t);
        const uint64_t bit = uint64_t{1} << j;
        mask ^= bit;
        if (mask & bit)
            s -= 2 * a[static_cast<size_t>(j) + 1];
        else
            s += 2 * a[static_cast<size_t>(j) + 1];
        emit(s);
    }
}

MomentResult moment_mc_d(const std::vector<double>& c, const PNorm& p,
                         const MomentPolicy& policy) {
    if (policy.mc_samples > kMcSampleCap)
        throw std::invalid_argument("moment: MC sample cap exceeded");
    Rng rng(policy.seed);
    const long ip = p.is_integer() ? p.integer() : 0;
    double sum = 0.0, sum_sq = 0.0;
    for (uint64_t s = 0; s < policy.mc_samples; ++s) {
        double x = 0.0;
        uint64_t bits = 0;
        int have = 0;
        for (size_t j = 0; j < c.size(); ++j) {
            if (have == 0) {
                bits = rng.next();
                have = 64;
            }
            x += (bits & 1) ? c[j] : -c[j];
            bits >>= 1;
            --have;
        }
        const double v = abs_pow_d(x, p.value(), ip, p.is_integer());
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(policy.mc_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    MomentResult r;
    r.value = mean;
    r.exact = false;
    r.std_error = std::sqrt(var / n);
    r.samples = policy.mc_samples;
    r.seed = policy.seed;
    return r;
}

}  // namespace

double rademacher_moment_enum_d(const std::vector<double>& c, double p) {
    if (c.empty()) throw std::invalid_argument("moment of empty coefficient list");
    PNorm pn(p);
    const long ip = pn.is_integer() ? pn.integer() : 0;
    double acc = 0.0;
    enumerate_signed_sums<double>(c, [&](double s) { acc += abs_pow_d(s, p, ip, pn.is_integer()); });
    const double patterns = std::ldexp(1.0, static_cast<int>(c.size()) - 1);
    return acc / patterns;
}

MomentResult rademacher_moment(const std::vector<Rat>& c, const PNorm& p,
                               const MomentPolicy& policy) {
    if (c.empty()) throw std::invalid_argument("moment of empty coefficient list");
    const size_t m = c.size();
    const int cap = std::min(policy.enum_cap, 25);
    if (static_cast<int>(m) > cap || !p.is_integer()) {
        std::vector<double> cd(m);
        for (size_t i = 0; i < m; ++i) cd[i] = to_d(c[i]);
        if (static_cast<int>(m) <= cap) {
            MomentResult r;
            r.value = rademacher_moment_enum_d(cd, p.value());
            return r;
        }
        return moment_mc_d(cd, p, policy);
    }

    // exact enumeration over a common denominator
    const unsigned long ip = static_cast<unsigned long>(p.integer());
    Int den(1);
    for (const auto& q : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> a(m);
    Int bound(0);
    for (size_t i = 0; i < m; ++i) {
        a[i] = c[i].get_num() * (den / c[i].get_den());
        bound += abs(a[i]);
    }

    Int acc(0);
    // int64 fast path when |sum|^p stays well inside 128 bits
    bool fast = bound.fits_slong_p();
    if (fast) {
        const long b = bound.get_si();
        double logmax = ip * std::log2(std::max<double>(2.0, static_cast<double>(b))) +
                        static_cast<double>(m);
        fast = b > 0 && b < (1L << 60) && logmax < 120.0;
    }
    if (fast) {
        std::vector<long> ai(m);
        for (size_t i = 0; i < m; ++i) ai[i] = a[i].get_si();
        unsigned __int128 total = 0;
        enumerate_signed_sums<long>(ai, [&](long s) {
            unsigned __int128 v = 1;
            unsigned long long u = static_cast<unsigned long long>(s < 0 ? -s : s);
            for (unsigned long i = 0; i < ip; ++i) v *= u;
            total += v;
        });
        // move the 128-bit total into an mpz via two 64-bit halves
        Int hi(static_cast<unsigned long>(total >> 64));
        Int lo(static_cast<unsigned long>(total & ~0ULL));
        acc = (hi << 64) + lo;
    } else {
        Int v;
        enumerate_signed_sums<Int>(a, [&](const Int& s) {
            mpz_pow_ui(v.get_mpz_t(), s.get_mpz_t(), ip);
            acc += abs(v);
        });
    }

    Int scale;  // 2^{m-1} * den^p
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(m - 1));
    Int den_p;
    mpz_pow_ui(den_p.get_mpz_t(), den.get_mpz_t(), ip);
    Rat exact(acc, scale * den_p);
    exact.canonicalize();

    MomentResult r;
    r.value = to_d(exact);
    r.exact = true;
    r.exact_value = std::move(exact);
    return r;
}

MomentResult rademacher_moment_d(const std::vector<double>& c, const PNorm& p,
                                 const MomentPolicy& policy) {
    if (c.empty()) throw std::invalid_argument("moment of empty coefficient list");
    if (static_cast<int>(c.size()) <= std::min(policy.enum_cap, 25)) {
        MomentResult r;
        r.value = rademacher_moment_enum_d(c, p.value());
        return r;
    }
    return moment_mc_d(c, p, policy);
}

Rat moment_closed_form_p2(const std::vector<Rat>& c) {
    Rat s(0);
    for (const auto& v : c) s += v * v;
    return s;
}

Rat moment_closed_form_p4(const std::vector<Rat>& c) {
    Rat s2(0), s4(0);
    for (const auto& v : c) {
        const Rat v2 = v * v;
        s2 += v2;
        s4 += v2 * v2;
    }
    return 3 * s2 * s2 - 2 * s4;
}

StepFunction square_sum(std::span<const Rat> a, std::span<const StepFunction> fns) {
    if (a.size() != fns.size())
        throw std::invalid_argument("square_sum: coefficient/function length mismatch");
    std::vector<Rat> sq(a.size());
    std::vector<StepFunction> fsq(fns.size());
    for (size_t i = 0; i < a.size(); ++i) {
        sq[i] = a[i] * a[i];
        fsq[i] = pointwise_product(fns[i], fns[i]);
    }
    return lin_comb(sq, fsq);
}

Scalar square_function_pnorm_power(std::span<const Rat> a, std::span<const StepFunction> fns,
                                   const PNorm& p) {
    const StepFunction s = square_sum(a, fns);
    if (p.is_integer()) {
        const long ip = p.integer();
        bool all_exact = true;
        Rat total(0);
        for (const auto& piece : s.pieces()) {
            Rat contrib;
            if (ip % 2 == 0) {
                contrib = rat_pow(piece.value, static_cast<unsigned long>(ip / 2));
            } else {
                Rat root;
                if (!rat_sqrt_exact(piece.value, root)) {
                    all_exact = false;
                    break;
                }
                contrib = rat_pow(root, static_cast<unsigned long>(ip));
            }
            total += contrib * (piece.hi - piece.lo);
        }
        if (all_exact) return Scalar::from_rat(total);
    }
    double acc = 0.0;
    for (const auto& piece : s.pieces())
        acc += std::pow(to_d(piece.value), p.value() / 2.0) * to_d(piece.hi - piece.lo);
    return Scalar::from_double(acc);
}

double square_function_pnorm(std::span<const Rat> a, std::span<const StepFunction> fns,
                             const PNorm& p) {
    return std::pow(square_function_pnorm_power(a, fns, p).approx, 1.0 / p.value());
}

std::vector<std::pair<HaarIndex, Rat>> haar_coefficients(const StepFunction& f, int depth) {
    if (depth < 0 || depth > kDyadicDepthCap)
        throw std::domain_error("haar_coefficients: depth cap exceeded");
    const Int grid = Int(1) << depth;
    for (const auto& piece : f.pieces()) {
        if (piece.lo < 0 || piece.hi > 1)
            throw std::invalid_argument("haar_coefficients: support must lie in [0,1]");
        for (const Rat* b : {&piece.lo, &piece.hi}) {
            Rat scaled = *b * Rat(grid);
            if (scaled.get_den() != 1)
                throw std::invalid_argument("haar_coefficients: non-dyadic breakpoint at this depth");
        }
    }
    const long count = 1L << depth;
    std::vector<std::pair<HaarIndex, Rat>> out;
    out.reserve(static_cast<size_t>(count));
    for (long n = 1; n <= count; ++n) {
        const StepFunction h = haar({n, 0});
        // <f,h_n> / <h_n,h_n>
        Rat coef = inner_l2(f, h) / haar_norm_power(n, 2);
        out.emplace_back(HaarIndex{n, 0}, std::move(coef));
    }
    return out;
}

DyadicTensor::DyadicTensor(int level, bool two_dim) : level_(level), two_dim_(two_dim) {
    const size_t side = size_t{1} << level;
    values_.assign(two_dim ? side * side : side, Rat(0));
}

DyadicTensor DyadicTensor::from_step(const StepFunction& f, int level) {
    if (level < 0 || level > kDyadicDepthCap)
        throw std::domain_error("DyadicTensor: level cap exceeded");
    DyadicTensor t(level, false);
    const long side = 1L << level;
    for (const auto& piece : f.pieces()) {
        if (piece.lo < 0 || piece.hi > 1)
            throw std::invalid_argument("DyadicTensor: support must lie in [0,1]");
        Rat lo_cell = piece.lo * rat(side);
        Rat hi_cell = piece.hi * rat(side);
        if (lo_cell.get_den() != 1 || hi_cell.get_den() != 1)
            throw std::invalid_argument("DyadicTensor: non-dyadic breakpoint at this level");
        for (long i = lo_cell.get_num().get_si(); i < hi_cell.get_num().get_si(); ++i)
            t.values_[static_cast<size_t>(i)] = piece.value;
    }
    return t;
}

DyadicTensor DyadicTensor::product(const DyadicTensor& u, const DyadicTensor& v) {
    if (u.two_dim_ || v.two_dim_ || u.level_ != v.level_)
        throw std::invalid_argument("DyadicTensor::product expects 1-d factors of equal level");
    DyadicTensor t(u.level_, true);
    const size_t side = size_t{1} << u.level_;
    for (size_t i = 0; i < side; ++i)
        for (size_t j = 0; j < side; ++j) t.values_[i * side + j] = u.values_[i] * v.values_[j];
    return t;
}

Rat DyadicTensor::lp_norm_power_exact(long p) const {
    if (p < 1) throw std::domain_error("lp_norm_power_exact requires p >= 1");
    Rat cell = rat(1, 1L << level_);
    if (two_dim_) cell *= cell;
    Rat s(0);
    for (const auto& v : values_) s += abs_pow(v, static_cast<unsigned long>(p));
    return s * cell;
}

DyadicTensor& DyadicTensor::add_scaled(const Rat& c, const DyadicTensor& other) {
    if (two_dim_ != other.two_dim_ || level_ != other.level_)
        throw std::invalid_argument("DyadicTensor::add_scaled: shape mismatch");
    for (size_t i = 0; i < values_.size(); ++i) values_[i] += c * other.values_[i];
    return *this;
}

}  // namespace translab
