// translab/stepfn.cpp
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

#include "translab/stepfn.hpp"

#include <algorithm>
#include <cmath>

namespace translab {

StepFunction StepFunction::from_pieces(std::vector<Piece> pieces) {
    std::erase_if(pieces, [](const Piece& p) { return p.value == 0; });
    for (const auto& p : pieces)
        if (!(p.lo < p.hi)) throw std::invalid_argument("step piece requires lo < hi");
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    StepFunction out;
    for (auto& p : pieces) {
        if (!out.pieces_.empty()) {
            Piece& last = out.pieces_.back();
            if (p.lo < last.hi) throw std::invalid_argument("overlapping step pieces");
            if (p.lo == last.hi && p.value == last.value) {
                last.hi = std::move(p.hi);
                continue;
            }
        }
        out.pieces_.push_back(std::move(p));
    }
    return out;
}

Rat StepFunction::eval(const Rat& x) const {
    // value on [lo, hi)
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rat& v, const Piece& p) { return v < p.lo; });
    if (it == pieces_.begin()) return Rat(0);
    --it;
    return x < it->hi ? it->value : Rat(0);
}

std::optional<Interval> StepFunction::support_hull() const {
    if (pieces_.empty()) return std::nullopt;
    return Interval(pieces_.front().lo, pieces_.back().hi);
}

StepFunction translate(const StepFunction& f, const Rat& lambda) {
    std::vector<StepFunction::Piece> out;
    out.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) out.push_back({p.lo + lambda, p.hi + lambda, p.value});
    return StepFunction::from_pieces(std::move(out));
}

StepFunction scale(const StepFunction& f, const Rat& c) {
    if (c == 0) return StepFunction();
    std::vector<StepFunction::Piece> out;
    out.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) out.push_back({p.lo, p.hi, c * p.value});
    return StepFunction::from_pieces(std::move(out));
}

namespace {

// Sorted distinct endpoints of all pieces of all functions.
std::vector<Rat> merged_grid(std::span<const StepFunction> fns) {
    std::vector<Rat> cuts;
    for (const auto& f : fns)
        for (const auto& p : f.pieces()) {
            cuts.push_back(p.lo);
            cuts.push_back(p.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

StepFunction lin_comb(std::span<const Rat> coeffs, std::span<const StepFunction> fns) {
    if (coeffs.size() != fns.size())
        throw std::invalid_argument("lin_comb: coefficient/function length mismatch");
    std::vector<Rat> cuts = merged_grid(fns);
    if (cuts.size() < 2) return StepFunction();

    // walk every function across the common grid in one pass
    std::vector<size_t> cursor(fns.size(), 0);
    std::vector<StepFunction::Piece> out;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        const Rat& lo = cuts[c];
        Rat v(0);
        for (size_t j = 0; j < fns.size(); ++j) {
            const auto& ps = fns[j].pieces();
            size_t& k = cursor[j];
            while (k < ps.size() && ps[k].hi <= lo) ++k;
            if (k < ps.size() && ps[k].lo <= lo) v += coeffs[j] * ps[k].value;
        }
        if (v != 0) out.push_back({lo, cuts[c + 1], std::move(v)});
    }
    return StepFunction::from_pieces(std::move(out));
}

StepFunction restrict(const StepFunction& f, const Interval& I) {
    std::vector<StepFunction::Piece> out;
    for (const auto& p : f.pieces()) {
        Rat lo = std::max(p.lo, I.lo);
        Rat hi = std::min(p.hi, I.hi);
        if (lo < hi) out.push_back({std::move(lo), std::move(hi), p.value});
    }
    return StepFunction::from_pieces(std::move(out));
}

StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
    const StepFunction fns[] = {f, g};
    std::vector<Rat> cuts = merged_grid(fns);
    std::vector<StepFunction::Piece> out;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        Rat v = f.eval(cuts[c]) * g.eval(cuts[c]);
        if (v != 0) out.push_back({cuts[c], cuts[c + 1], std::move(v)});
    }
    return StepFunction::from_pieces(std::move(out));
}

Rat integral(const StepFunction& f) {
    Rat s(0);
    for (const auto& p : f.pieces()) s += p.value * (p.hi - p.lo);
    return s;
}

Rat inner_l2(const StepFunction& f, const StepFunction& g) {
    // overlap sweep; pieces of both are sorted
    Rat s(0);
    const auto& a = f.pieces();
    const auto& b = g.pieces();
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Rat lo = std::max(a[i].lo, b[j].lo);
        const Rat hi = std::min(a[i].hi, b[j].hi);
        if (lo < hi) s += a[i].value * b[j].value * (hi - lo);
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return s;
}

Rat lp_norm_power_exact(const StepFunction& f, long p) {
    if (p < 1) throw std::domain_error("lp_norm_power_exact requires p >= 1");
    Rat s(0);
    for (const auto& piece : f.pieces())
        s += abs_pow(piece.value, static_cast<unsigned long>(p)) * (piece.hi - piece.lo);
    return s;
}

Scalar lp_norm_power(const StepFunction& f, const PNorm& p) {
    if (p.is_integer()) return Scalar::from_rat(lp_norm_power_exact(f, p.integer()));
    double s = 0.0;
    for (const auto& piece : f.pieces())
        s += std::pow(std::fabs(to_d(piece.value)), p.value()) * to_d(piece.hi - piece.lo);
    return Scalar::from_double(s);
}

double lp_norm(const StepFunction& f, const PNorm& p) {
    return std::pow(lp_norm_power(f, p).approx, 1.0 / p.value());
}

double intersection_norm(const StepFunction& f, const PNorm& p) {
    if (!(p.value() > 2.0))
        throw std::domain_error("intersection_norm is defined for p > 2");
    return std::max(lp_norm(f, p), lp_norm(f, PNorm(2L)));
}

std::complex<double> fourier_eval(const StepFunction& f, double t) {
    constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;
    if (t == 0.0) return {inv_sqrt_2pi * to_d(integral(f)), 0.0};
    std::complex<double> s(0.0, 0.0);
    const std::complex<double> it(0.0, t);
    for (const auto& p : f.pieces()) {
        // Integral over [lo,hi) of e^{-ixt} dx = (e^{-i lo t} - e^{-i hi t}) / (it)
        std::complex<double> a = std::exp(-it * to_d(p.lo));
        std::complex<double> b = std::exp(-it * to_d(p.hi));
        s += to_d(p.value) * (a - b) / it;
    }
    return inv_sqrt_2pi * s;
}

}  // namespace translab
