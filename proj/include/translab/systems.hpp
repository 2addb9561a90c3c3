// translab/systems.hpp -- systems of translates: separation, tail mass,
// minimality distances, basis/unconditionality diagnostics.
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

#ifndef TRANSLAB_SYSTEMS_HPP
#define TRANSLAB_SYSTEMS_HPP

#include <cstdint>
#include <vector>

#include "translab/ratlin.hpp"
#include "translab/stepfn.hpp"

namespace translab {

inline constexpr size_t kSignEnumCap = 22;    // sign-search enumeration cap
inline constexpr size_t kMaxTranslates = 512;

// {f_(lambda) : lambda in Lambda} with Lambda finite, strictly increasing
// and uniformly discrete.
class TranslateSystem {
public:
    TranslateSystem(StepFunction base, std::vector<Rat> lambdas, PNorm p);

    const StepFunction& base() const { return base_; }
    const std::vector<Rat>& lambdas() const { return lambdas_; }
    const PNorm& p() const { return p_; }
    size_t size() const { return lambdas_.size(); }
    StepFunction member(size_t i) const { return translate(base_, lambdas_[i]); }
    std::vector<StepFunction> members() const;

private:
    StepFunction base_;
    std::vector<Rat> lambdas_;
    PNorm p_;
};

// exact minimum gap; throws on duplicates or fewer than two points
Rat separation(const std::vector<Rat>& lambdas);

// Tail mass sum_lambda ||f_(lambda)|_I||_p^p together with its certified
// bound ceil((b-a)/eps0) ||f||_p^p.
struct TailMassReport {
    Scalar value;
    Scalar bound;
    Int cells;        // ceil((b-a)/eps0)
    bool within = false;
};
TailMassReport tail_mass(const TranslateSystem& sys, const Interval& I);

// G[i][j] = Integral f_i f_j, exact
RatMat gram_l2(const std::vector<StepFunction>& fns);

struct DistanceResult {
    Rat dist_sq;
    double dist = 0.0;
};
// exact L_2 distance from target to span(fns) via normal equations
DistanceResult distance_to_span_l2(const StepFunction& target,
                                   const std::vector<StepFunction>& fns);
// distance from member i to span of the other members of `window`
DistanceResult minimality_distance_l2(const TranslateSystem& sys, size_t i,
                                      const std::vector<size_t>& window);

enum class SearchMode { enumerate, sample };

// A certified lower bound together with the witness that realizes it; the
// certificate re-evaluates exactly in rational arithmetic for integer p.
struct ConstantEstimate {
    double lower_bound = 0.0;
    std::vector<Rat> coeffs;  // witness coefficients
    std::vector<int> signs;   // witness signs (unconditional search)
    size_t prefix = 0;        // witness prefix length (basis search)
    SearchMode mode = SearchMode::sample;
    uint64_t trials = 0;
    uint64_t seed = 0;
    Scalar ratio_power;  // (witness numerator / denominator) ^ p, exact when p integral
};

// sup ||sum eps_i a_i f_i|| / ||sum a_i f_i|| over signs (exact inner max by
// enumeration when |fns| <= 22) and sampled coefficient vectors.
ConstantEstimate unconditional_constant_lb(const std::vector<StepFunction>& fns,
                                           const PNorm& p, SearchMode mode,
                                           uint64_t trials, uint64_t seed);

// sup_{m<n} ||sum_{i<=m} a_i f_i|| / ||sum_{i<=n} a_i f_i|| over sampled
// coefficients, all prefixes checked per sample.
ConstantEstimate basis_constant_lb(const std::vector<StepFunction>& fns, const PNorm& p,
                                   uint64_t trials, uint64_t seed);

// exact re-evaluation of a stored witness; numerator/denominator norm
// powers as a ratio
Scalar sign_ratio_power(const std::vector<StepFunction>& fns, const PNorm& p,
                        const std::vector<Rat>& coeffs, const std::vector<int>& signs);
Scalar prefix_ratio_power(const std::vector<StepFunction>& fns, const PNorm& p,
                          const std::vector<Rat>& coeffs, size_t prefix);

// sum over n in [n_lo, n_hi] of ||f|_{[n-1,n]}||_p^r
double window_series(const StepFunction& f, const PNorm& p, double r, long n_lo, long n_hi);

// same series from externally supplied window norms (for bases whose
// window norms are known analytically rather than representable exactly)
double series_from_window_norms(const std::vector<double>& norms, double r);

}  // namespace translab

#endif  // TRANSLAB_SYSTEMS_HPP
