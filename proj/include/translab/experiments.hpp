// translab/experiments.hpp -- deterministic experiment runners shared by the
// CLI and the acceptance suite.
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

#ifndef TRANSLAB_EXPERIMENTS_HPP
#define TRANSLAB_EXPERIMENTS_HPP

#include "translab/embed.hpp"
#include "translab/growth.hpp"
#include "translab/io.hpp"

namespace translab::experiments {

struct Outcome {
    json report;
    std::string csv;
    bool pass = false;
};

// the three-bump function of the non-minimal integer-translate example
StepFunction dilworth_base();
// chi_[0,1] - chi_[1,2]
StepFunction diff_bump_base();
// g_n = f + sum_k (-1)^k (n-k+1)/n (f_(k) + f_(-k)) for the Dilworth base
StepFunction dilworth_gn(long n);

// closed form of the Dilworth transform under this library's convention
std::complex<double> dilworth_fourier_closed(double t);

Outcome run_dilworth_gn(long p, long n_max);
Outcome run_dilworth_fourier(long grid_points, double t_span, double tol);
Outcome run_telescope(long p, long n_max);
// the distance threshold applies once the run reaches threshold_at
Outcome run_minimality(long n_max, double threshold = 0.2, long threshold_at = 50);
Outcome run_tailmass(int instances, uint64_t seed);
// fixture mode: one certified report for a user-supplied system
Outcome run_tailmass_fixture(const TranslateSystem& sys, const Interval& I);
Outcome run_khintchine(int vectors, int max_size, uint64_t seed, uint64_t mc_samples);
Outcome run_ex216(long p, const std::vector<long>& ms, uint64_t window_samples, uint64_t seed);
Outcome run_ex217(long p, const std::vector<long>& ns, uint64_t seed, uint64_t mc_samples);
Outcome run_thm213(long p, const std::vector<long>& block_sizes, int draws, uint64_t seed,
                   uint64_t mc_samples);
Outcome run_embed(double epsilon, int trials, uint64_t seed);
Outcome run_discrete_witness(long n_range, int parseval_trials, uint64_t seed);
Outcome run_span_distance();
Outcome run_norms(const StepFunction& f, double p);
Outcome run_fit(const std::vector<GrowthPoint>& points);

}  // namespace translab::experiments

#endif  // TRANSLAB_EXPERIMENTS_HPP
