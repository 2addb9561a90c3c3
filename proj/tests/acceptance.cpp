// Acceptance suite: runs every pinned end-to-end check and prints one
// PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.
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

#include <chrono>
#include <cstdio>
#include <string>

#include "translab/experiments.hpp"

namespace {

using namespace translab;
namespace ex = translab::experiments;

int failures = 0;

void report(int index, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
    std::printf("%s  [%2d] %-34s (%6.2fs)%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                seconds, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename Fn>
void criterion(int index, const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        ex::Outcome outcome = fn();
        pass = outcome.pass;
        if (outcome.report.contains("detail")) detail = outcome.report["detail"].dump();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(index, name, pass, secs, detail);
}

}  // namespace

int main() {
    criterion(1, "dilworth identity ||g_n||_p^p = 4/n^p", [] {
        ex::Outcome all;
        all.pass = true;
        for (long p : {1L, 2L, 3L}) {
            const auto o = ex::run_dilworth_gn(p, 50);
            all.pass = all.pass && o.pass;
        }
        return all;
    });

    criterion(2, "telescoping sums, exact", [] {
        ex::Outcome all;
        all.pass = true;
        for (long p : {1L, 2L, 3L}) {
            const auto o = ex::run_telescope(p, 20);
            all.pass = all.pass && o.pass;
        }
        return all;
    });

    criterion(3, "non-minimality distance < 0.2 at n=50", [] { return ex::run_minimality(50); });

    criterion(4, "tail-mass certificate on 100 instances", [] { return ex::run_tailmass(100, 424242); });

    criterion(5, "khintchine oracle, 1000 vectors + MC", [] {
        return ex::run_khintchine(1000, 12, 31415, 1000000);
    });

    criterion(6, "ex216 growth exponents (p=3)", [] {
        return ex::run_ex216(3, {8, 16, 32, 64, 128, 256, 512}, 100000, 161616);
    });

    criterion(7, "ex217 dichotomy (p=5)", [] {
        return ex::run_ex217(5, {4, 8, 16, 32}, 271828, 1000000);
    });

    criterion(8, "thm213 equivalence window (p=5)", [] {
        return ex::run_thm213(5, {1, 16, 81}, 50, 213213, 200000);
    });

    criterion(9, "partition embedding (p=1, eps=0.1)", [] { return ex::run_embed(0.1, 100, 24); });

    criterion(10, "discrete witnesses, exact", [] {
        return ex::run_discrete_witness(100, 100, 1010);
    });

    criterion(11, "fourier consistency on a 10^4 grid", [] {
        return ex::run_dilworth_fourier(10000, 50.0, 1e-9);
    });

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
