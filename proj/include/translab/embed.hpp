// translab/embed.hpp -- interval partitions, conditional expectation and the
// certified almost-isometric embedding into l_p.
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

#ifndef TRANSLAB_EMBED_HPP
#define TRANSLAB_EMBED_HPP

#include <cstdint>
#include <vector>

#include "translab/systems.hpp"

namespace translab {

// Ordered contiguous interval cells covering a window; the cells are
// [e_0,e_1), ..., [e_{m-1},e_m).
class Partition {
public:
    explicit Partition(std::vector<Rat> cuts);

    Interval window() const { return Interval(cuts_.front(), cuts_.back()); }
    size_t size() const { return cuts_.size() - 1; }
    Interval cell(size_t i) const { return Interval(cuts_[i], cuts_[i + 1]); }
    Rat measure(size_t i) const { return cuts_[i + 1] - cuts_[i]; }
    const std::vector<Rat>& cuts() const { return cuts_; }

    Partition refined_with(std::vector<Rat> extra) const;
    bool refines(const Partition& coarser) const;

private:
    std::vector<Rat> cuts_;
};

// biorthogonal duals g_i = sum_j (G^-1)_{ij} f_j with K = sup_i ||g_i||_q
struct DualSystem {
    std::vector<StepFunction> duals;
    double bound_K = 0.0;
};
DualSystem dual_system_l2(const std::vector<StepFunction>& fns, const PNorm& p);

// E_Pi f = sum_D (integral_D f) chi_D / m(D); requires supp f inside the window
StepFunction cond_expect(const StepFunction& f, const Partition& pi);

// coordinates a_D = m(D)^{1/p-1} integral_D f, so ||a||_{l_p} = ||E_Pi f||_p
std::vector<double> embed_coords(const StepFunction& f, const Partition& pi, const PNorm& p);
// sum_D |integral_D f|^p m(D)^{1-p}, exact for integer p
Scalar coords_lp_power(const StepFunction& f, const Partition& pi, const PNorm& p);

// (2.1)-type stage certificate: k_power * tail_value <= threshold_power,
// where tail_value = sum_{i >= from_index} ||f_i|_window||_p^p is exact.
struct TailCertificate {
    int k = 0;
    size_t from_index = 0;
    Rat window_radius;     // window is [-r, r]
    Rat tail_value;
    Rat k_power;           // (lower l_q constant)^p
    Rat threshold_power;   // (eps 2^-k)^p
};

// (2.3)-type block certificate: the stored cuts partition `block` and the
// conditional-expectation residual bound over the span is `residual`.
struct BlockCertificate {
    int k = 0;
    size_t span_count = 0;  // members whose span the bound covers
    Rat block_lo, block_hi;
    std::vector<Rat> cuts;
    Rat residual;
    Rat threshold;  // eps 2^{-k}
};

struct PartitionPlan {
    std::vector<size_t> n_k;
    std::vector<Rat> m_k;
    Partition partition{std::vector<Rat>{Rat(0), Rat(1)}};  // replaced by the build
    std::vector<TailCertificate> tail_certs;
    std::vector<BlockCertificate> block_certs;
    double frame_constant = 1.0;  // max sampled prefix-projection ratio
    double lower_lq_K = 0.0;      // coefficient-map bound used in the tail route
};

// exact re-evaluation hooks for stored certificates
Rat tail_mass_from(const std::vector<StepFunction>& members, size_t from_index,
                   const Interval& window, long p);
Rat block_residual_reevaluate(const std::vector<StepFunction>& members, size_t span_count,
                              const std::vector<Rat>& cuts, long p, const Rat& K_dual);

// Escalating interval scheme: picks n_1 < n_2 < ..., windows I_k = [-m_k,m_k]
// and a partition of each block A_k = I_k \ I_{k-1} whose conditional-
// expectation residual is certified below eps 2^{-k} in exact arithmetic.
PartitionPlan build_partition(const TranslateSystem& sys, const DualSystem& duals,
                              double epsilon, uint64_t seed);

struct EmbeddingReport {
    std::vector<Rat> partition_cuts;
    double epsilon = 0.0;
    std::vector<std::pair<uint64_t, double>> ratios;  // (sample id, ||Tf||/||f||)
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double restriction_inf = 0.0;  // inf ||f|_{[-c,c]}|| / ||f|| over samples
    Rat restriction_c;
};

// Samples seeded unit vectors in span(sys) and measures the coordinate-map
// distortion together with the restriction-norm diagnostic at cutoff c.
EmbeddingReport distortion_report(const TranslateSystem& sys, const Partition& pi,
                                  const PNorm& p, uint64_t trials, uint64_t seed,
                                  const Rat& restriction_c);

}  // namespace translab

#endif  // TRANSLAB_EMBED_HPP
