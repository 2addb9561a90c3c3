// translab/seqmodel.hpp -- the l_p(Z,V) sequence model: shifts, pairings,
// the p > 4 translate constructions and the discrete Fourier witnesses.
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

#ifndef TRANSLAB_SEQMODEL_HPP
#define TRANSLAB_SEQMODEL_HPP

#include <complex>
#include <map>
#include <span>

#include "translab/dyadic.hpp"
#include "translab/systems.hpp"

namespace translab {

// ---------------------------------------------------------------------------
// coordinate carriers

// finite combination sum_j c_j r_j of Rademacher functions; terms sorted by
// index, coefficients nonzero (exact cancellations are dropped on merge)
struct RadCombo {
    std::vector<std::pair<long, double>> terms;

    void add(long j, double c);
    bool is_zero() const { return terms.empty(); }
    std::vector<double> coefficients() const;

    friend bool operator==(const RadCombo&, const RadCombo&) = default;
};

// finite combination sum c * h_n(s) * r_j(t) of unnormalized Haar times
// Rademacher tensors on [0,1]^2; any normalization is premultiplied into c
struct HaarRadSum {
    struct Term {
        long haar_n;
        long rad_j;
        double coef;
        friend bool operator==(const Term&, const Term&) = default;
    };
    std::vector<Term> terms;  // sorted by (haar_n, rad_j), coef nonzero

    void add(long n, long j, double c);
    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const HaarRadSum&, const HaarRadSum&) = default;
};

// value of the unnormalized h_n on the dyadic atom [t 2^-K, (t+1) 2^-K)
int haar_atom_value(long n, long atom, long K);
// atom resolution needed to make h_n constant per atom
long haar_resolution(long n);

Scalar coord_norm_power(const StepFunction& f, const PNorm& p, const MomentPolicy& policy);
Scalar coord_norm_power(const RadCombo& f, const PNorm& p, const MomentPolicy& policy);
Scalar coord_norm_power(const HaarRadSum& f, const PNorm& p, const MomentPolicy& policy);

// ---------------------------------------------------------------------------
// Z-indexed elements with finitely many nonzero coordinates

template <class C>
class SeqElement {
public:
    using Map = std::map<Int, C>;

    SeqElement() = default;

    const Map& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    void set(Int index, C value) {
        if (value.is_zero())
            coords_.erase(index);
        else
            coords_[std::move(index)] = std::move(value);
    }
    const C* at(const Int& index) const {
        auto it = coords_.find(index);
        return it == coords_.end() ? nullptr : &it->second;
    }

    // F^{(k)}: coordinate n picks up the old coordinate n-k
    SeqElement shifted(const Int& k) const {
        SeqElement out;
        for (const auto& [idx, c] : coords_) out.coords_.emplace(idx + k, c);
        return out;
    }

    friend bool operator==(const SeqElement&, const SeqElement&) = default;

private:
    Map coords_;
};

// linear combination sum_i c_i F_i, coordinates merged per carrier
SeqElement<RadCombo> seq_lin_comb(std::span<const double> coeffs,
                                  std::span<const SeqElement<RadCombo>> elems);
SeqElement<HaarRadSum> seq_lin_comb(std::span<const double> coeffs,
                                    std::span<const SeqElement<HaarRadSum>> elems);
SeqElement<StepFunction> seq_lin_comb(std::span<const Rat> coeffs,
                                      std::span<const SeqElement<StepFunction>> elems);

// ||F||_p^p = sum over coordinates of coordinate norm powers
template <class C>
Scalar seq_pnorm_power(const SeqElement<C>& f, const PNorm& p, const MomentPolicy& policy = {}) {
    double total = 0.0;
    bool exact = p.is_integer();
    Rat total_exact(0);
    for (const auto& [idx, c] : f.coords()) {
        const Scalar s = coord_norm_power(c, p, policy);
        total += s.approx;
        if (s.exact && exact)
            total_exact += s.value;
        else
            exact = false;
    }
    if (exact) return Scalar::from_rat(total_exact);
    return Scalar::from_double(total);
}

// sum_k <f_k, g_k>, exact L_2 coordinate pairings
Rat pairing(const SeqElement<StepFunction>& f, const SeqElement<StepFunction>& g);
double pairing(const SeqElement<RadCombo>& f, const SeqElement<RadCombo>& g);

// ---------------------------------------------------------------------------
// thm213: the p > 4 block construction over Haar x Rademacher tensors whose
// translate span contains a Haar-equivalent block basis

struct BlockScheme {
    std::vector<long> sizes;                      // |J_n|, each a fourth power
    std::vector<Rat> eps;                          // eps_j, 1-based j stored at j-1
    std::vector<std::pair<long, long>> blocks;     // J_n as inclusive [lo, hi]

    long total() const { return static_cast<long>(eps.size()); }
    long block_of(long j) const;                  // n with j in J_n (1-based)
    Rat eps_power_sum(long n, long p) const;      // sum_{j in J_n} eps_j^p
    Rat eps_power_sum_all(long p) const;
};

// sizes must be fourth powers so that eps_j = |J_n|^{-1/4} stays rational and
// sum_{j in J_n} eps_j^4 = 1 holds exactly
BlockScheme make_block_scheme(const std::vector<long>& sizes);

Int pow3(long j);

class Thm213System {
public:
    Thm213System(PNorm p, BlockScheme scheme);

    const PNorm& p() const { return p_; }
    const BlockScheme& scheme() const { return scheme_; }
    const SeqElement<HaarRadSum>& base() const { return base_; }

    SeqElement<HaarRadSum> translate_j(long j) const;   // f^{(-3^j)}
    SeqElement<HaarRadSum> block_vector(long n) const;  // b^{(n)} = sum_{j in J_n} eps_j f^{(-3^j)}
    SeqElement<HaarRadSum> combo(std::span<const double> a) const;  // sum_j a_j f^{(-3^j)}

private:
    PNorm p_;
    BlockScheme scheme_;
    SeqElement<HaarRadSum> base_;
};

Thm213System thm213_build(const PNorm& p, BlockScheme scheme);

// || sum_n d_n h_n / ||h_n||_p ||_p^p for nonnegative d, on the dyadic grid
double haar_combo_pnorm_power(std::span<const double> d, const PNorm& p);

struct NormFormulaReport {
    double lhs = 0.0;        // || sum a_j f^{(-3^j)} ||_p^p
    double rhs = 0.0;        // surrogate: haar part + sum |a_j|^p
    double haar_part = 0.0;
    double lp_part = 0.0;
    double ratio = 0.0;
};
NormFormulaReport norm_formula_219(const Thm213System& sys, std::span<const double> a,
                                   const MomentPolicy& policy = {});

// ---------------------------------------------------------------------------
// ex217: the p > 4 telescoping Rademacher construction, basic in its natural
// order but not unconditional

class Ex217System {
public:
    Ex217System(PNorm p, long n_max);

    const PNorm& p() const { return p_; }
    long n_max() const { return n_max_; }
    double a(long j) const;  // a_0 = 1, a_j = j^{-1/4}

    const SeqElement<RadCombo>& base() const { return base_; }
    SeqElement<RadCombo> translate_j(long j) const;                 // f^{(-3^j)}
    SeqElement<RadCombo> combo(std::span<const double> b) const;    // sum b_j f^{(-3^j)}
    RadCombo coordinate0(std::span<const double> b) const;

private:
    PNorm p_;
    long n_max_;
    SeqElement<RadCombo> base_;
};

Ex217System ex217_build(const PNorm& p, long n_max);

// ---------------------------------------------------------------------------
// torus transform of scalar sequences and the even-shift witness

struct RatC {
    Rat re, im;
    bool is_zero() const { return re == 0 && im == 0; }
    friend bool operator==(const RatC&, const RatC&) = default;
};

// trig part sum_n xi_n e^{int} plus a real step part whose breakpoints are
// measured in units of pi over [-1,1]
struct TorusFunction {
    std::map<long, RatC> trig;
    StepFunction step_over_pi;
};

struct TorusScalar {
    RatC pi_coeff;                      // exact multiple of pi
    RatC plain_coeff;                   // exact pi-free part
    std::complex<double> extra{0, 0};   // transcendental remainder
    bool exact() const { return extra == std::complex<double>(0, 0); }
    std::complex<double> value() const;
};

// integral over [-pi,pi] of u * conj(v), in closed form
TorusScalar torus_inner(const TorusFunction& u, const TorusFunction& v);

// scalar l_2(Z) sequences and their shift spans
using SeqVec = std::map<long, Rat>;

TorusFunction torus_transform(const SeqVec& x);  // x^(t) = sum xi_n e^{int}
SeqVec seq_shift(const SeqVec& x, long k);

// exact distance from target to span{ x^{(k)} : k in shifts } via Toeplitz
// normal equations
DistanceResult shift_span_distance_l2(const SeqVec& x, const SeqVec& target,
                                      const std::vector<long>& shifts);

}  // namespace translab

#endif  // TRANSLAB_SEQMODEL_HPP
