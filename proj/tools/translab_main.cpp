// translab CLI: experiment runner emitting JSON reports and CSV series.
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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "translab/experiments.hpp"

namespace {

using namespace translab;
namespace ex = translab::experiments;

struct CommonOpts {
    double p = 1.0;
    long n = 10;
    long depth = 6;
    uint64_t trials = 100;
    uint64_t seed = 1;
    double epsilon = 0.1;
    uint64_t samples = 100000;
    std::string out_path;
    std::string fn_triples;
    std::string lambdas;
    std::string interval;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "L_p exponent");
    cmd->add_option("--n", o.n, "size parameter");
    cmd->add_option("--depth", o.depth, "dyadic depth");
    cmd->add_option("--trials", o.trials, "sampled trials");
    cmd->add_option("--seed", o.seed, "master seed (mandatory for sampling)");
    cmd->add_option("--epsilon", o.epsilon, "target tolerance");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples");
    cmd->add_option("--out", o.out_path, "output path stem (.json/.csv emitted)");
    cmd->add_option("--fn", o.fn_triples, "step function as (lo,hi,value) triples");
    cmd->add_option("--lambdas", o.lambdas, "comma-separated translation points");
    cmd->add_option("--interval", o.interval, "interval as lo,hi");
    cmd->add_option("--config", o.config_path, "key=value config file (overrides flags)");
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::string token;
    for (char ch : text + ",") {
        if (ch == ',' || ch == ' ') {
            if (!token.empty()) out.push_back(parse_rat(token));
            token.clear();
        } else {
            token += ch;
        }
    }
    return out;
}

void apply_config(CommonOpts& o) {
    if (o.config_path.empty()) return;
    for (const auto& [key, value] : parse_config_file(o.config_path)) {
        if (key == "p")
            o.p = std::stod(value);
        else if (key == "n")
            o.n = std::stol(value);
        else if (key == "depth")
            o.depth = std::stol(value);
        else if (key == "trials")
            o.trials = std::stoull(value);
        else if (key == "seed")
            o.seed = std::stoull(value);
        else if (key == "epsilon")
            o.epsilon = std::stod(value);
        else if (key == "samples")
            o.samples = std::stoull(value);
        else if (key == "out")
            o.out_path = value;
        else if (key == "fn")
            o.fn_triples = value;
        else if (key == "lambdas")
            o.lambdas = value;
        else if (key == "interval")
            o.interval = value;
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
}

int finish(const ex::Outcome& outcome, const CommonOpts& o) {
    if (!o.out_path.empty()) {
        write_text_file(o.out_path + ".json", outcome.report.dump(2) + "\n");
        if (!outcome.csv.empty()) write_text_file(o.out_path + ".csv", outcome.csv);
    } else {
        std::cout << outcome.report.dump(2) << "\n";
        if (!outcome.csv.empty()) std::cout << outcome.csv;
    }
    return outcome.pass ? 0 : 1;
}

std::vector<long> doubling_range(long lo, long hi) {
    std::vector<long> v;
    for (long m = lo; m <= hi; m *= 2) v.push_back(m);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for translate systems in L_p"};
    app.require_subcommand(1);

    std::map<std::string, CommonOpts> opts;
    const std::vector<std::string> verbs = {
        "norms",    "dilworth-gn", "dilworth-fourier", "telescope",
        "minimality", "tailmass",  "embed",            "thm213",
        "ex216",    "ex217",       "discrete-witness", "span-distance",
        "fit"};
    for (const auto& v : verbs) add_common(app.add_subcommand(v), opts[v]);

    std::string fit_csv_path;
    app.get_subcommand("fit")->add_option("--points", fit_csv_path,
                                          "CSV file with n,value rows (no header)");

    CLI11_PARSE(app, argc, argv);
    const std::string verb = app.get_subcommands().front()->get_name();
    CommonOpts o = opts[verb];

    try {
        apply_config(o);
        ex::Outcome outcome;
        if (verb == "norms") {
            if (o.fn_triples.empty()) throw std::invalid_argument("norms needs --fn");
            outcome = ex::run_norms(step_from_triples(o.fn_triples), o.p);
        } else if (verb == "dilworth-gn") {
            outcome = ex::run_dilworth_gn(static_cast<long>(o.p), o.n);
        } else if (verb == "dilworth-fourier") {
            outcome = ex::run_dilworth_fourier(10000, 50.0, o.epsilon);
        } else if (verb == "telescope") {
            outcome = ex::run_telescope(static_cast<long>(o.p), o.n);
        } else if (verb == "minimality") {
            outcome = ex::run_minimality(o.n);
        } else if (verb == "tailmass") {
            if (!o.fn_triples.empty()) {
                const auto lams = parse_rat_list(o.lambdas);
                const auto ab = parse_rat_list(o.interval);
                if (ab.size() != 2) throw std::invalid_argument("fixture needs --interval lo,hi");
                const TranslateSystem sys(step_from_triples(o.fn_triples), lams, PNorm(o.p));
                outcome = ex::run_tailmass_fixture(sys, Interval(ab[0], ab[1]));
            } else {
                outcome = ex::run_tailmass(static_cast<int>(o.trials), o.seed);
            }
        } else if (verb == "embed") {
            outcome = ex::run_embed(o.epsilon, static_cast<int>(o.trials), o.seed);
        } else if (verb == "thm213") {
            outcome = ex::run_thm213(5, {1, 16, 81}, static_cast<int>(o.trials), o.seed,
                                     o.samples);
        } else if (verb == "ex216") {
            outcome = ex::run_ex216(static_cast<long>(o.p), doubling_range(8, o.n), o.samples,
                                    o.seed);
        } else if (verb == "ex217") {
            outcome = ex::run_ex217(static_cast<long>(o.p), doubling_range(4, o.n), o.seed,
                                    o.samples);
        } else if (verb == "discrete-witness") {
            outcome = ex::run_discrete_witness(o.n, static_cast<int>(o.trials), o.seed);
        } else if (verb == "span-distance") {
            outcome = ex::run_span_distance();
        } else if (verb == "fit") {
            if (fit_csv_path.empty()) throw std::invalid_argument("fit needs --points");
            std::ifstream in(fit_csv_path);
            if (!in) throw std::runtime_error("cannot open " + fit_csv_path);
            std::vector<GrowthPoint> pts;
            double n, v;
            char comma;
            while (in >> n >> comma >> v) pts.push_back({n, v});
            outcome = ex::run_fit(pts);
        }
        return finish(outcome, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
