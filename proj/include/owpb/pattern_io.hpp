// Copyright 2026 The owpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pattern file format (UTF-8 JSON):
//
//   { "m": 3, "inputs": [1], "outputs": [3], "edges": [[1,2],[2,3]],
//     "angles": {"1": 0.5235987755982988, "2": 0.0} }
//
// Labels may be any distinct positive integers. Pure auxiliaries are the
// vertices that are neither inputs nor outputs. Parsing relabels canonically:
// inputs, then auxiliaries, then outputs, each block in ascending original
// label order.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "owpb/errors.hpp"
#include "owpb/pattern.hpp"

namespace owpb {

namespace detail {

inline Label parse_label(const nlohmann::json &value, const std::string &field) {
    if (!value.is_number_integer()) {
        throw PatternError(field, "labels must be positive integers, got " + value.dump());
    }
    const auto raw = value.get<std::int64_t>();
    if (raw < 1 || raw > 0xFFFFFFFFLL) {
        throw PatternError(field, "labels must be positive integers, got " + value.dump());
    }
    return static_cast<Label>(raw);
}

inline Label parse_label_key(const std::string &key) {
    if (key.empty() || key.size() > 10 || key.find_first_not_of("0123456789") != std::string::npos ||
        key[0] == '0') {
        throw PatternError("angles", "angle keys must be positive integer labels, got \"" + key + "\"");
    }
    const auto raw = std::stoull(key);
    if (raw > 0xFFFFFFFFULL) {
        throw PatternError("angles", "angle key out of range: \"" + key + "\"");
    }
    return static_cast<Label>(raw);
}

inline std::vector<Label> parse_label_list(const nlohmann::json &doc, const std::string &field) {
    if (!doc.contains(field)) {
        throw PatternError(field, "missing");
    }
    const auto &list = doc.at(field);
    if (!list.is_array()) {
        throw PatternError(field, "must be an array of labels");
    }
    std::vector<Label> labels;
    std::set<Label> seen;
    for (const auto &item : list) {
        Label v = parse_label(item, field);
        if (!seen.insert(v).second) {
            throw PatternError(field, "label " + std::to_string(v) + " listed twice");
        }
        labels.push_back(v);
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

}  // namespace detail

/// Parses and validates a pattern document. Every error is a PatternError
/// naming the offending field.
inline Pattern parse_pattern(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw PatternError("document", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw PatternError("document", "top level must be a JSON object");
    }
    for (const auto &[key, value] : doc.items()) {
        if (key != "m" && key != "inputs" && key != "outputs" && key != "edges" && key != "angles") {
            throw PatternError(key, "unknown key");
        }
    }

    if (!doc.contains("m") || !doc.at("m").is_number_integer() || doc.at("m").get<std::int64_t>() < 0) {
        throw PatternError("m", "must be a non-negative integer");
    }
    const auto m = static_cast<std::size_t>(doc.at("m").get<std::int64_t>());

    const std::vector<Label> inputs = detail::parse_label_list(doc, "inputs");
    const std::vector<Label> outputs = detail::parse_label_list(doc, "outputs");
    for (Label v : outputs) {
        if (std::binary_search(inputs.begin(), inputs.end(), v)) {
            throw PatternError("outputs", "overlapping input/output label " + std::to_string(v));
        }
    }
    if (inputs.size() != outputs.size()) {
        throw PatternError("outputs", "expected as many outputs as inputs (" + std::to_string(inputs.size()) +
                                          "), got " + std::to_string(outputs.size()));
    }

    if (!doc.contains("edges") || !doc.at("edges").is_array()) {
        throw PatternError("edges", "must be an array of [u, v] pairs");
    }
    std::vector<std::pair<Label, Label>> raw_edges;
    for (const auto &item : doc.at("edges")) {
        if (!item.is_array() || item.size() != 2) {
            throw PatternError("edges", "each edge must be a pair [u, v], got " + item.dump());
        }
        raw_edges.emplace_back(detail::parse_label(item[0], "edges"), detail::parse_label(item[1], "edges"));
    }

    if (!doc.contains("angles") || !doc.at("angles").is_object()) {
        throw PatternError("angles", "must be an object mapping measured labels to angles");
    }
    std::map<Label, double> angles;
    for (const auto &[key, value] : doc.at("angles").items()) {
        if (!value.is_number()) {
            throw PatternError("angles", "angle for \"" + key + "\" must be a number");
        }
        angles.emplace(detail::parse_label_key(key), value.get<double>());
    }

    std::set<Label> all(inputs.begin(), inputs.end());
    all.insert(outputs.begin(), outputs.end());
    for (const auto &[u, v] : raw_edges) {
        all.insert(u);
        all.insert(v);
    }
    for (const auto &[v, theta] : angles) {
        all.insert(v);
    }
    if (all.size() != m) {
        throw PatternError("m", "document declares m = " + std::to_string(m) + " but references " +
                                    std::to_string(all.size()) + " distinct labels");
    }

    std::vector<Label> auxiliaries;
    for (Label v : all) {
        if (!std::binary_search(inputs.begin(), inputs.end(), v) &&
            !std::binary_search(outputs.begin(), outputs.end(), v)) {
            auxiliaries.push_back(v);
        }
    }

    std::map<Label, Label> canonical;
    Label next = 1;
    for (const std::vector<Label> &block : {std::cref(inputs), std::cref(auxiliaries), std::cref(outputs)}) {
        for (Label v : block) {
            canonical[v] = next++;
        }
    }

    for (const auto &[v, theta] : angles) {
        if (std::binary_search(outputs.begin(), outputs.end(), v)) {
            throw PatternError("angles", "output qubit " + std::to_string(v) + " must not carry an angle");
        }
    }
    const std::size_t measured = inputs.size() + auxiliaries.size();
    if (angles.size() != measured) {
        throw PatternError("angles", "expected " + std::to_string(measured) + " measurement angles, got " +
                                         std::to_string(angles.size()));
    }
    std::vector<double> canonical_angles(measured);
    for (const auto &[v, theta] : angles) {
        canonical_angles[canonical.at(v) - 1] = theta;
    }

    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    std::set<std::pair<Label, Label>> seen_edges;
    for (const auto &[u, v] : raw_edges) {
        if (u == v) {
            throw PatternError("edges", "self-loop on vertex " + std::to_string(u));
        }
        if (!seen_edges.emplace(std::min(u, v), std::max(u, v)).second) {
            throw PatternError("edges", "duplicate edge [" + std::to_string(u) + "," + std::to_string(v) + "]");
        }
        edges.push_back(Edge{canonical.at(u), canonical.at(v)});
    }
    return Pattern(inputs.size(), auxiliaries.size(), std::move(edges), std::move(canonical_angles));
}

/// Deterministic document: keys m, inputs, outputs, edges, angles; edges in
/// colexicographic order; angle keys ascending. Ends with a newline.
inline std::string serialize_pattern(const Pattern &p) {
    nlohmann::ordered_json doc;
    doc["m"] = p.m();
    const VertexSubset inputs = p.inputs();
    const VertexSubset outputs = p.outputs();
    doc["inputs"] = std::vector<Label>(inputs.begin(), inputs.end());
    doc["outputs"] = std::vector<Label>(outputs.begin(), outputs.end());
    auto edges = nlohmann::ordered_json::array();
    for (const Edge &e : p.edges()) {
        edges.push_back({e.u, e.v});
    }
    doc["edges"] = std::move(edges);
    auto angles = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < p.measured_count(); ++k) {
        angles[std::to_string(k + 1)] = p.angles()[k];
    }
    doc["angles"] = std::move(angles);
    return doc.dump() + "\n";
}

}  // namespace owpb
