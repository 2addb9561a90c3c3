// translab/io.cpp
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

#include "translab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace translab {

std::string step_to_triples(const StepFunction& f) {
    std::string out;
    for (const auto& p : f.pieces()) {
        if (!out.empty()) out += ' ';
        out += '(' + rat_str(p.lo) + ',' + rat_str(p.hi) + ',' + rat_str(p.value) + ')';
    }
    return out;
}

StepFunction step_from_triples(const std::string& text) {
    std::vector<StepFunction::Piece> pieces;
    std::string token;
    std::vector<std::string> fields;
    for (char ch : text) {
        if (ch == '(') {
            token.clear();
            fields.clear();
        } else if (ch == ',' ) {
            fields.push_back(token);
            token.clear();
        } else if (ch == ')') {
            fields.push_back(token);
            token.clear();
            if (fields.size() != 3)
                throw std::invalid_argument("step triple needs exactly (lo,hi,value)");
            pieces.push_back({parse_rat(fields[0]), parse_rat(fields[1]), parse_rat(fields[2])});
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            token += ch;
        }
    }
    return StepFunction::from_pieces(std::move(pieces));
}

json step_to_json(const StepFunction& f) {
    json arr = json::array();
    for (const auto& p : f.pieces())
        arr.push_back({rat_str(p.lo), rat_str(p.hi), rat_str(p.value)});
    return arr;
}

StepFunction step_from_json(const json& j) {
    std::vector<StepFunction::Piece> pieces;
    for (const auto& t : j)
        pieces.push_back({parse_rat(t.at(0).get<std::string>()),
                          parse_rat(t.at(1).get<std::string>()),
                          parse_rat(t.at(2).get<std::string>())});
    return StepFunction::from_pieces(std::move(pieces));
}

json seq_to_json(const SeqElement<StepFunction>& f) {
    json obj = json::object();
    for (const auto& [idx, c] : f.coords())
        obj[idx.get_str()] = {{"kind", "step"}, {"pieces", step_to_json(c)}};
    return obj;
}

SeqElement<StepFunction> seq_from_json(const json& j) {
    SeqElement<StepFunction> out;
    for (const auto& [key, payload] : j.items()) {
        if (payload.at("kind").get<std::string>() != "step")
            throw std::invalid_argument("seq_from_json: unsupported coordinate kind");
        out.set(Int(key, 10), step_from_json(payload.at("pieces")));
    }
    return out;
}

json seq_to_json(const SeqElement<RadCombo>& f) {
    json obj = json::object();
    for (const auto& [idx, c] : f.coords()) {
        json terms = json::array();
        for (const auto& [j2, v] : c.terms) terms.push_back({{"rad", j2}, {"coef", v}});
        obj[idx.get_str()] = {{"kind", "rademacher"}, {"terms", terms}};
    }
    return obj;
}

json seq_to_json(const SeqElement<HaarRadSum>& f) {
    json obj = json::object();
    for (const auto& [idx, c] : f.coords()) {
        json terms = json::array();
        for (const auto& t : c.terms)
            terms.push_back({{"haar", t.haar_n}, {"rad", t.rad_j}, {"coef", t.coef}});
        obj[idx.get_str()] = {{"kind", "haar_rademacher"}, {"terms", terms}};
    }
    return obj;
}

json tensor_to_json(const DyadicTensor& t) {
    json vals = json::array();
    for (const auto& v : t.values()) vals.push_back(rat_str(v));
    return {{"level", t.level()}, {"two_dim", t.is_two_dim()}, {"values", vals}};
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column count");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void CsvWriter::save(const std::string& path) const { write_text_file(path, text_); }

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("fmt_double failed");
    return std::string(buf, ptr);
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace translab
