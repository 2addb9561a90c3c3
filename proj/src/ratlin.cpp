// translab/ratlin.cpp
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

#include "translab/ratlin.hpp"

#include <numeric>
#include <string>

namespace translab {

namespace {
std::string join(const std::vector<size_t>& v) {
    std::string s;
    for (size_t i : v) s += (s.empty() ? "" : ",") + std::to_string(i);
    return s;
}
}  // namespace

SingularSystem::SingularSystem(std::vector<size_t> cols)
    : std::runtime_error("singular system; dependent columns {" + join(cols) + "}"),
      dependent(std::move(cols)) {}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec mat_vec(const RatMat& A, const RatVec& x) {
    RatVec y(A.size(), Rat(0));
    for (size_t i = 0; i < A.size(); ++i) y[i] = dot(A[i], x);
    return y;
}

RatVec solve_pseudo(RatMat A, RatVec b) {
    const size_t m = A.size();
    const size_t n = m == 0 ? 0 : A[0].size();
    if (b.size() != m) throw std::invalid_argument("solve_pseudo: shape mismatch");

    std::vector<size_t> pivot_col;  // pivot column of row r
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t piv = row;
        while (piv < m && A[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(A[piv], A[row]);
        std::swap(b[piv], b[row]);
        const Rat inv = 1 / A[row][col];
        for (size_t j = col; j < n; ++j) A[row][j] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            const Rat factor = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= factor * A[row][j];
            b[i] -= factor * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (b[i] != 0) throw std::runtime_error("solve_pseudo: inconsistent system");

    RatVec x(n, Rat(0));
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
    return x;
}

RatMat invert(RatMat A) {
    const size_t n = A.size();
    RatMat inv(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;

    std::vector<size_t> dependent;
    size_t row = 0;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = row;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) {
            dependent.push_back(col);
            continue;
        }
        std::swap(A[piv], A[row]);
        std::swap(inv[piv], inv[row]);
        const Rat scale = 1 / A[row][col];
        for (size_t j = 0; j < n; ++j) {
            A[row][j] *= scale;
            inv[row][j] *= scale;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            const Rat factor = A[i][col];
            for (size_t j = 0; j < n; ++j) {
                A[i][j] -= factor * A[row][j];
                inv[i][j] -= factor * inv[row][j];
            }
        }
        ++row;
    }
    if (!dependent.empty()) throw SingularSystem(std::move(dependent));
    return inv;
}

bool is_psd(RatMat G) {
    const size_t n = G.size();
    std::vector<size_t> active(n);
    std::iota(active.begin(), active.end(), size_t{0});

    while (!active.empty()) {
        // largest remaining diagonal entry as pivot
        size_t best = 0;
        for (size_t k = 1; k < active.size(); ++k)
            if (G[active[k]][active[k]] > G[active[best]][active[best]]) best = k;
        const size_t p = active[best];
        const Rat d = G[p][p];
        if (d < 0) return false;
        if (d == 0) {
            // remaining block must vanish entirely
            for (size_t a : active)
                for (size_t b : active)
                    if (G[a][b] != 0) return false;
            return true;
        }
        active.erase(active.begin() + static_cast<long>(best));
        for (size_t a : active)
            for (size_t b : active) G[a][b] -= G[a][p] * G[p][b] / d;
    }
    return true;
}

}  // namespace translab
