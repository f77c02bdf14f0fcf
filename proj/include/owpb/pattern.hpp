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

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "owpb/errors.hpp"

namespace owpb {

/// Vertex (qubit) label, 1-based.
using Label = std::uint32_t;

/// Set of vertices packed into a word. Label v of an m-vertex pattern lives at
/// bit (m - v), so the mask of a subset is exactly the computational basis
/// index whose most significant of m digits belongs to qubit 1.
using VertexMask = std::uint64_t;

inline constexpr std::size_t kMaxQubits = 64;

/// Strictly increasing list of labels.
class VertexSubset {
   public:
    VertexSubset() = default;

    explicit VertexSubset(std::vector<Label> labels) : labels_(std::move(labels)) {
        for (std::size_t k = 0; k < labels_.size(); ++k) {
            if (labels_[k] == 0) {
                throw std::invalid_argument("vertex labels are 1-based; got 0");
            }
            if (k > 0 && labels_[k - 1] >= labels_[k]) {
                throw std::invalid_argument("vertex subset must be strictly increasing");
            }
        }
    }

    /// The labels first, first+1, ..., first+count-1.
    static VertexSubset range(Label first, std::size_t count) {
        std::vector<Label> labels(count);
        for (std::size_t k = 0; k < count; ++k) {
            labels[k] = first + static_cast<Label>(k);
        }
        return VertexSubset(std::move(labels));
    }

    std::size_t size() const noexcept {
        return labels_.size();
    }
    bool empty() const noexcept {
        return labels_.empty();
    }
    Label operator[](std::size_t k) const {
        return labels_[k];
    }
    auto begin() const noexcept {
        return labels_.begin();
    }
    auto end() const noexcept {
        return labels_.end();
    }
    std::span<const Label> labels() const noexcept {
        return labels_;
    }

    bool contains(Label v) const {
        return std::binary_search(labels_.begin(), labels_.end(), v);
    }

    bool disjoint_from(const VertexSubset &other) const {
        auto a = labels_.begin();
        auto b = other.labels_.begin();
        while (a != labels_.end() && b != other.labels_.end()) {
            if (*a == *b) {
                return false;
            }
            if (*a < *b) {
                ++a;
            } else {
                ++b;
            }
        }
        return true;
    }

    friend bool operator==(const VertexSubset &, const VertexSubset &) = default;

   private:
    std::vector<Label> labels_;
};

/// Selection function: the positions l in 1..universe_size whose l-th most
/// significant digit in the universe_size-digit binary expansion of k-1 is 1.
inline VertexSubset sel(std::size_t universe_size, std::uint64_t k) {
    if (universe_size >= 64) {
        throw std::out_of_range("selection universe must have fewer than 64 elements");
    }
    if (k < 1 || k > (std::uint64_t{1} << universe_size)) {
        throw std::out_of_range("selection index " + std::to_string(k) + " outside 1.." +
                                std::to_string(std::uint64_t{1} << universe_size));
    }
    const std::uint64_t digits = k - 1;
    std::vector<Label> picked;
    for (std::size_t l = 1; l <= universe_size; ++l) {
        if ((digits >> (universe_size - l)) & 1U) {
            picked.push_back(static_cast<Label>(l));
        }
    }
    return VertexSubset(std::move(picked));
}

/// Selection extended to an ordered vertex set via the order-preserving
/// bijection with 1..|universe|.
inline VertexSubset sel(const VertexSubset &universe, std::uint64_t k) {
    const VertexSubset positions = sel(universe.size(), k);
    std::vector<Label> picked;
    picked.reserve(positions.size());
    for (Label pos : positions) {
        picked.push_back(universe[pos - 1]);
    }
    return VertexSubset(std::move(picked));
}

/// Unordered edge, normalized so that u < v.
struct Edge {
    Label u = 0;
    Label v = 0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Colexicographic order on pairs: by larger endpoint, then by smaller.
inline bool colex_less(const Edge &x, const Edge &y) {
    return x.v != y.v ? x.v < y.v : x.u < y.u;
}

/// 1-based position of the pair (u, v), u < v, in the colexicographic pair list.
inline std::size_t colex_pair_index(Label u, Label v) {
    const std::size_t big = v - 1;
    return big * (big - 1) / 2 + u;
}

/// Open graph state with measurement angles, canonically labeled: inputs are
/// 1..n, pure auxiliaries n+1..n+a, outputs m-n+1..m. The measured qubits
/// 1..n+a each carry an angle theta (basis |+-_theta>).
class Pattern {
   public:
    Pattern(std::size_t inputs, std::size_t auxiliaries, std::vector<Edge> edges, std::vector<double> angles)
        : n_(inputs), a_(auxiliaries), edges_(std::move(edges)), angles_(std::move(angles)) {
        const std::size_t m = 2 * n_ + a_;
        if (m > kMaxQubits) {
            throw PatternError("m", "at most " + std::to_string(kMaxQubits) + " qubits are supported, got " +
                                        std::to_string(m));
        }
        if (angles_.size() != n_ + a_) {
            throw PatternError("angles", "expected " + std::to_string(n_ + a_) + " measurement angles, got " +
                                             std::to_string(angles_.size()));
        }
        adjacency_.assign(m, 0);
        for (Edge &e : edges_) {
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
            if (e.u == e.v) {
                throw PatternError("edges", "self-loop on vertex " + std::to_string(e.u));
            }
            if (e.u < 1 || e.v > m) {
                throw PatternError("edges", "edge [" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                                "] references a label outside 1.." + std::to_string(m));
            }
            if (adjacency_[e.u - 1] & mask_of(e.v)) {
                throw PatternError("edges",
                                   "duplicate edge [" + std::to_string(e.u) + "," + std::to_string(e.v) + "]");
            }
            adjacency_[e.u - 1] |= mask_of(e.v);
            adjacency_[e.v - 1] |= mask_of(e.u);
        }
        std::sort(edges_.begin(), edges_.end(), colex_less);
    }

    std::size_t m() const noexcept {
        return 2 * n_ + a_;
    }
    std::size_t n() const noexcept {
        return n_;
    }
    std::size_t a() const noexcept {
        return a_;
    }
    std::size_t measured_count() const noexcept {
        return n_ + a_;
    }

    /// Edges in colexicographic order.
    std::span<const Edge> edges() const noexcept {
        return edges_;
    }

    /// Angles indexed by label - 1, for labels 1..n+a.
    std::span<const double> angles() const noexcept {
        return angles_;
    }
    double angle(Label v) const {
        if (v < 1 || v > angles_.size()) {
            throw std::out_of_range("qubit " + std::to_string(v) + " is not measured");
        }
        return angles_[v - 1];
    }

    VertexSubset inputs() const {
        return VertexSubset::range(1, n_);
    }
    VertexSubset auxiliaries() const {
        return VertexSubset::range(static_cast<Label>(n_ + 1), a_);
    }
    VertexSubset outputs() const {
        return VertexSubset::range(static_cast<Label>(n_ + a_ + 1), n_);
    }
    VertexSubset vertices() const {
        return VertexSubset::range(1, m());
    }

    bool has_edge(Label u, Label v) const {
        return u >= 1 && u <= m() && v >= 1 && v <= m() && (adjacency_[u - 1] & mask_of(v)) != 0;
    }

    VertexMask mask_of(Label v) const {
        return VertexMask{1} << (m() - v);
    }

    /// Throws std::invalid_argument if the subset has labels outside 1..m.
    VertexMask mask_of(const VertexSubset &subset) const {
        VertexMask mask = 0;
        for (Label v : subset) {
            if (v > m()) {
                throw std::invalid_argument("label " + std::to_string(v) + " is not a vertex of the pattern");
            }
            mask |= mask_of(v);
        }
        return mask;
    }

    VertexMask neighbors(Label v) const {
        return adjacency_[v - 1];
    }

    /// Number of edges of the subgraph induced by the vertices in `mask`.
    std::uint64_t edges_within(VertexMask mask) const {
        std::uint64_t twice = 0;
        for (VertexMask rest = mask; rest != 0; rest &= rest - 1) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(rest));
            twice += static_cast<std::uint64_t>(std::popcount(adjacency_[m() - bit - 1] & mask));
        }
        return twice / 2;
    }

    /// Number of edges with one endpoint in `a` and the other in `b` (disjoint masks).
    std::uint64_t edges_between(VertexMask a, VertexMask b) const {
        std::uint64_t count = 0;
        for (VertexMask rest = a; rest != 0; rest &= rest - 1) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(rest));
            count += static_cast<std::uint64_t>(std::popcount(adjacency_[m() - bit - 1] & b));
        }
        return count;
    }

    /// Same graph, new measurement angles.
    Pattern with_angles(std::vector<double> angles) const {
        return Pattern(n_, a_, edges_, std::move(angles));
    }

   private:
    std::size_t n_ = 0;
    std::size_t a_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> angles_;
    std::vector<VertexMask> adjacency_;
};

/// Number of edges of the subgraph induced by `subset`.
inline std::uint64_t edge_count_within(const Pattern &p, const VertexSubset &subset) {
    return p.edges_within(p.mask_of(subset));
}

/// Number of edges joining `a` and `b`; the two sets must be disjoint.
inline std::uint64_t edge_count_between(const Pattern &p, const VertexSubset &a, const VertexSubset &b) {
    if (!a.disjoint_from(b)) {
        throw std::invalid_argument("edge_count_between requires disjoint vertex sets");
    }
    return p.edges_between(p.mask_of(a), p.mask_of(b));
}

/// Incidence bits over all C(m,2) vertex pairs in colexicographic order:
/// (1,2); (1,3),(2,3); (1,4),(2,4),(3,4); ...
inline std::vector<std::uint8_t> edge_binary_list(const Pattern &p) {
    const std::size_t m = p.m();
    std::vector<std::uint8_t> bits(m * (m - (m > 0 ? 1 : 0)) / 2, 0);
    for (const Edge &e : p.edges()) {
        bits[colex_pair_index(e.u, e.v) - 1] = 1;
    }
    return bits;
}

}  // namespace owpb
