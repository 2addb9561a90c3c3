// translab/ratlin.hpp -- exact rational linear algebra for Gram systems.
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

#ifndef TRANSLAB_RATLIN_HPP
#define TRANSLAB_RATLIN_HPP

#include <vector>

#include "translab/rat.hpp"

namespace translab {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

struct SingularSystem : std::runtime_error {
    std::vector<size_t> dependent;  // columns without a pivot
    explicit SingularSystem(std::vector<size_t> cols);
};

Rat dot(const RatVec& a, const RatVec& b);
RatVec mat_vec(const RatMat& A, const RatVec& x);

// Least-squares style pseudo-solve of A x = b by Gaussian elimination with
// free variables pinned to zero.  Throws if the system is inconsistent
// (never the case for normal equations G c = <target, basis>).
RatVec solve_pseudo(RatMat A, RatVec b);

// Inverse; throws SingularSystem listing the pivotless columns.
RatMat invert(RatMat A);

// Exact positive-semidefiniteness check by diagonally pivoted symmetric
// elimination.
bool is_psd(RatMat G);

}  // namespace translab

#endif  // TRANSLAB_RATLIN_HPP
