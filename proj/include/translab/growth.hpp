// translab/growth.hpp -- growth-law fitting for experiment series.
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

#ifndef TRANSLAB_GROWTH_HPP
#define TRANSLAB_GROWTH_HPP

#include <vector>

namespace translab {

struct GrowthPoint {
    double n;
    double value;
};

// model value = c * n^beta * (log n)^alpha, fitted by least squares on
// log value = log c + beta log n + alpha log log n
struct GrowthFit {
    double c = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double residual = 0.0;  // rms of log residuals
    std::vector<GrowthPoint> points;
};

GrowthFit fit_growth(const std::vector<GrowthPoint>& points);

}  // namespace translab

#endif  // TRANSLAB_GROWTH_HPP
