// translab/dyadic.hpp -- Haar and Rademacher systems, exact moment oracle.
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

#ifndef TRANSLAB_DYADIC_HPP
#define TRANSLAB_DYADIC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "translab/stepfn.hpp"

namespace translab {

inline constexpr int kDyadicDepthCap = 14;
inline constexpr uint64_t kMcSampleCap = 10000000;

// Linear Haar index n >= 1 plus an integer shift: h_{(n,k)} = h_n((.) - k).
struct HaarIndex {
    long n = 1;
    long shift = 0;
};

// dyadic level of h_n: h_1 has level 0; for n >= 2, n = 2^k + j with
// 0 <= j < 2^k gives level k, support [j 2^-k, (j+1) 2^-k].
long haar_level(long n);

// unnormalized h_n, shifted
StepFunction haar(const HaarIndex& idx);

// ||h_n||_p^p = 2^{-level} for n >= 2, 1 for n = 1 (independent of p).
Rat haar_norm_power(long n, long p);

// Exact k-th root of a positive rational, kept symbolic.
struct RootScalar {
    Rat radicand;
    long index = 1;  // value is radicand^(1/index)
    double approx() const;
};

// scale * fn with the scale an exact radical; carrier for normalized Haar
// functions whose normalizing factor is irrational.
struct ScaledStep {
    StepFunction fn;
    RootScalar scale;
};

// h_n / ||h_n||_p.  For non-integer p the radical index is 0 and only
// approx() is meaningful.
ScaledStep haar_normalized(const HaarIndex& idx, const PNorm& p);

// r_1 = chi_[0,1]; r_n for n >= 2 alternates sign on 2^{n-1} dyadic cells.
StepFunction rademacher(long n);

struct MomentPolicy {
    int enum_cap = 20;            // enumerate up to 2^enum_cap sign patterns
    uint64_t mc_samples = 1000000;
    uint64_t seed = 1;
};

struct MomentResult {
    double value = 0.0;    // E |sum_j eps_j c_j|^p
    bool exact = false;    // full enumeration with integer p
    Rat exact_value;       // meaningful iff exact
    double std_error = 0;  // Monte Carlo only
    uint64_t samples = 0;  // Monte Carlo only
    uint64_t seed = 0;
};

// E |sum eps_j c_j|^p over independent signs.  Exact rational by full sign
// enumeration when |c| <= cap and p is an integer; seeded Monte Carlo with a
// reported standard error otherwise.
MomentResult rademacher_moment(const std::vector<Rat>& c, const PNorm& p,
                               const MomentPolicy& policy = {});
MomentResult rademacher_moment_d(const std::vector<double>& c, const PNorm& p,
                                 const MomentPolicy& policy = {});

// enumeration kernel in double arithmetic (2^{|c|-1} patterns; caller
// enforces the cap)
double rademacher_moment_enum_d(const std::vector<double>& c, double p);

// closed forms E X^2 = sum c^2 and E X^4 = 3 (sum c^2)^2 - 2 sum c^4
Rat moment_closed_form_p2(const std::vector<Rat>& c);
Rat moment_closed_form_p4(const std::vector<Rat>& c);

// sum_i a_i^2 f_i^2, exact
StepFunction square_sum(std::span<const Rat> a, std::span<const StepFunction> fns);

// || (sum a_i^2 f_i^2)^{1/2} ||_p^p on the merged grid; exact whenever every
// cell value of the square sum has a rational square root or p is even.
Scalar square_function_pnorm_power(std::span<const Rat> a,
                                   std::span<const StepFunction> fns, const PNorm& p);
double square_function_pnorm(std::span<const Rat> a, std::span<const StepFunction> fns,
                             const PNorm& p);

// Exact expansion of a dyadic step function on [0,1] in the unnormalized
// Haar basis up to 2^depth terms; reconstruction via lin_comb is exact.
// Throws if f has breakpoints outside the level-`depth` dyadic grid.
std::vector<std::pair<HaarIndex, Rat>> haar_coefficients(const StepFunction& f, int depth);

// Dense rational grid function on [0,1] (size 2^L) or [0,1]^2 (2^L x 2^L);
// brute-force carrier for tensor products of dyadic step functions.
class DyadicTensor {
public:
    static DyadicTensor from_step(const StepFunction& f, int level);
    // outer product u(s) * v(t) of two level-L grid functions
    static DyadicTensor product(const DyadicTensor& u, const DyadicTensor& v);

    int level() const { return level_; }
    bool is_two_dim() const { return two_dim_; }
    const std::vector<Rat>& values() const { return values_; }

    Rat lp_norm_power_exact(long p) const;
    DyadicTensor& add_scaled(const Rat& c, const DyadicTensor& other);

private:
    DyadicTensor(int level, bool two_dim);
    int level_ = 0;
    bool two_dim_ = false;
    std::vector<Rat> values_;  // row-major when two_dim_
};

}  // namespace translab

#endif  // TRANSLAB_DYADIC_HPP
