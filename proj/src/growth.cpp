// translab/growth.cpp
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

#include "translab/growth.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace translab {

namespace {

// solve the 3x3 system by Gaussian elimination with partial pivoting
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12)
            throw std::runtime_error("fit_growth: degenerate design matrix");
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

}  // namespace

GrowthFit fit_growth(const std::vector<GrowthPoint>& points) {
    if (points.size() < 4) throw std::invalid_argument("fit_growth needs at least 4 points");
    for (const auto& p : points)
        if (!(p.n >= 3.0) || !(p.value > 0.0))
            throw std::invalid_argument("fit_growth needs n >= 3 and positive values");

    // normal equations for (log c, beta, alpha)
    std::array<std::array<double, 4>, 3> m{};
    for (const auto& p : points) {
        const double x1 = std::log(p.n);
        const double x2 = std::log(std::log(p.n));
        const double y = std::log(p.value);
        const std::array<double, 3> row{1.0, x1, x2};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
            m[i][3] += row[i] * y;
        }
    }
    const auto [logc, beta, alpha] = solve3(m);

    GrowthFit fit;
    fit.c = std::exp(logc);
    fit.beta = beta;
    fit.alpha = alpha;
    fit.points = points;
    double ss = 0.0;
    for (const auto& p : points) {
        const double pred = logc + beta * std::log(p.n) + alpha * std::log(std::log(p.n));
        const double r = std::log(p.value) - pred;
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(points.size()));
    return fit;
}

}  // namespace translab
