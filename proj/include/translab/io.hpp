// translab/io.hpp -- textual fixtures, CSV series and JSON payloads.
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

#ifndef TRANSLAB_IO_HPP
#define TRANSLAB_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "translab/seqmodel.hpp"
#include "translab/stepfn.hpp"

namespace translab {

using nlohmann::json;

// "(lo,hi,value)" triples, whitespace separated; rationals in slash or exact
// decimal notation
std::string step_to_triples(const StepFunction& f);
StepFunction step_from_triples(const std::string& text);

json step_to_json(const StepFunction& f);
StepFunction step_from_json(const json& j);

json seq_to_json(const SeqElement<StepFunction>& f);
SeqElement<StepFunction> seq_from_json(const json& j);
json seq_to_json(const SeqElement<RadCombo>& f);
json seq_to_json(const SeqElement<HaarRadSum>& f);

json tensor_to_json(const DyadicTensor& t);

// simple deterministic CSV writer: fixed formatting, no locale surprises
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    void save(const std::string& path) const;

private:
    size_t columns_;
    std::string text_;
};

std::string fmt_double(double v);  // shortest round-trip decimal

// key = value lines; '#' comments; used for experiment configs
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace translab

#endif  // TRANSLAB_IO_HPP
