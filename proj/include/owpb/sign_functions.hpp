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

// Graph-encoded sign vectors.
//
// P(S): entry k is the parity sign of the edge count of the subgraph induced
// by sel(S, k). B(V, W): entry k is the parity sign of the number of edges
// between V and sel(W, k); edges inside V or inside W never count.
//
// All vectors use the most-significant-digit-first index convention of sel.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "owpb/kronecker.hpp"
#include "owpb/pattern.hpp"
#include "owpb/signs.hpp"

namespace owpb {

enum class PMethod { enumerate, quadratic_form, edge_list };
enum class BMethod { enumerate, column_parity };

namespace detail {

inline void require_vector_size(std::size_t set_size) {
    if (set_size > 30) {
        throw CapExceeded("sign vector over " + std::to_string(set_size) + " vertices would have 2^" +
                          std::to_string(set_size) + " entries");
    }
}

inline std::uint64_t reverse_low_bits(std::uint64_t x, std::size_t width) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < width; ++j) {
        out = (out << 1) | ((x >> j) & 1U);
    }
    return out;
}

inline std::uint64_t isqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return r;
}

/// Mask of sel(subset, k) in the pattern's bit convention.
inline VertexMask selection_mask(const Pattern &p, const VertexSubset &subset, std::uint64_t index0) {
    const std::size_t t = subset.size();
    VertexMask mask = 0;
    for (std::size_t j = 0; j < t; ++j) {
        if ((index0 >> (t - 1 - j)) & 1U) {
            mask |= p.mask_of(subset[j]);
        }
    }
    return mask;
}

inline void require_subset(const Pattern &p, const VertexSubset &s) {
    for (Label v : s) {
        if (v > p.m()) {
            throw std::invalid_argument("label " + std::to_string(v) + " is not a vertex of the pattern");
        }
    }
}

}  // namespace detail

/// f(k) = floor((sqrt(8k - 7) + 1) / 2): for the k-th colexicographic pair
/// (1-based), f(k) + 1 is the larger endpoint.
inline std::size_t edge_list_group(std::size_t k) {
    return static_cast<std::size_t>((detail::isqrt(8 * k - 7) + 1) / 2);
}

/// P evaluated directly on an edge binary list over `vertex_count` vertices.
///
/// The product formula reads its digits from the least significant end with
/// vertex j at digit j-1, and its index stands for the basis label i - 1. The
/// canonical (most-significant-first) index c therefore maps to x =
/// bit-reversal of c over vertex_count digits:
///   entry c = prod_k (-1)^(b_k * X1(x, k) * X2(x, k)),
///   X1(x, k) = digit f(k) of x,  X2(x, k) = digit k - C(f(k), 2) - 1 of x.
inline SignVector p_vector_from_edge_list(std::span<const std::uint8_t> edge_bits, std::size_t vertex_count) {
    detail::require_vector_size(vertex_count);
    const std::size_t pairs = vertex_count < 2 ? 0 : vertex_count * (vertex_count - 1) / 2;
    if (edge_bits.size() != pairs) {
        throw std::invalid_argument("edge binary list over " + std::to_string(vertex_count) + " vertices needs " +
                                    std::to_string(pairs) + " bits, got " + std::to_string(edge_bits.size()));
    }
    const std::uint64_t size = std::uint64_t{1} << vertex_count;
    std::vector<Sign> out(size);
    for (std::uint64_t c = 0; c < size; ++c) {
        const std::uint64_t x = detail::reverse_low_bits(c, vertex_count);
        unsigned parity = 0;
        for (std::size_t k = 1; k <= pairs; ++k) {
            if (!edge_bits[k - 1]) {
                continue;
            }
            const std::size_t f = edge_list_group(k);
            const unsigned x1 = (x >> f) & 1U;
            const unsigned x2 = (x >> (k - f * (f - 1) / 2 - 1)) & 1U;
            parity ^= x1 & x2;
        }
        out[c] = parity ? Sign{-1} : Sign{1};
    }
    return SignVector(std::move(out));
}

/// P of the subgraph induced by `subset`, computed by the requested representation.
inline SignVector p_vector(const Pattern &p, const VertexSubset &subset, PMethod method = PMethod::enumerate) {
    detail::require_subset(p, subset);
    const std::size_t t = subset.size();
    detail::require_vector_size(t);
    const std::uint64_t size = std::uint64_t{1} << t;

    switch (method) {
        case PMethod::enumerate: {
            std::vector<Sign> out(size);
            for (std::uint64_t k = 0; k < size; ++k) {
                out[k] = static_cast<Sign>(sign_parity(static_cast<long long>(
                    edge_count_within(p, sel(subset, k + 1)))));
            }
            return SignVector(std::move(out));
        }
        case PMethod::quadratic_form: {
            // Orient every edge from the smaller to the larger label and keep
            // the +1 entries: a strictly upper-triangular 0/1 matrix A. Then
            // entry k = SP((A x, x)) with x the digits of k-1.
            std::vector<std::uint8_t> upper(t * t, 0);
            for (std::size_t r = 0; r < t; ++r) {
                for (std::size_t c = r + 1; c < t; ++c) {
                    upper[r * t + c] = p.has_edge(subset[r], subset[c]) ? 1 : 0;
                }
            }
            std::vector<Sign> out(size);
            std::vector<unsigned> x(t);
            for (std::uint64_t k = 0; k < size; ++k) {
                for (std::size_t j = 0; j < t; ++j) {
                    x[j] = (k >> (t - 1 - j)) & 1U;
                }
                unsigned form = 0;
                for (std::size_t r = 0; r < t; ++r) {
                    unsigned ax = 0;
                    for (std::size_t c = 0; c < t; ++c) {
                        ax += upper[r * t + c] * x[c];
                    }
                    form += ax * x[r];
                }
                out[k] = static_cast<Sign>(sign_parity(form));
            }
            return SignVector(std::move(out));
        }
        case PMethod::edge_list: {
            const std::size_t pairs = t < 2 ? 0 : t * (t - 1) / 2;
            std::vector<std::uint8_t> bits(pairs, 0);
            for (std::size_t hi = 1; hi < t; ++hi) {
                for (std::size_t lo = 0; lo < hi; ++lo) {
                    if (p.has_edge(subset[lo], subset[hi])) {
                        bits[colex_pair_index(static_cast<Label>(lo + 1), static_cast<Label>(hi + 1)) - 1] = 1;
                    }
                }
            }
            return p_vector_from_edge_list(bits, t);
        }
    }
    throw std::invalid_argument("unknown P method");
}

/// Expanded-or-factored B-hat: the Kronecker product of [1, SP(b_j)].
inline KroneckerSignVector b_hat(std::vector<std::uint8_t> bits) {
    return KroneckerSignVector(std::move(bits));
}

/// Bit j = parity of the number of edges between V and the j-th vertex of W,
/// i.e. the mod-2 column sums of the V x W biadjacency block.
inline std::vector<std::uint8_t> column_parity(const Pattern &p, const VertexSubset &v_set, const VertexSubset &w_set) {
    detail::require_subset(p, v_set);
    detail::require_subset(p, w_set);
    if (!v_set.disjoint_from(w_set)) {
        throw std::invalid_argument("column_parity requires disjoint vertex sets");
    }
    const VertexMask v_mask = p.mask_of(v_set);
    std::vector<std::uint8_t> bits(w_set.size());
    for (std::size_t j = 0; j < w_set.size(); ++j) {
        bits[j] = static_cast<std::uint8_t>(std::popcount(p.neighbors(w_set[j]) & v_mask) & 1);
    }
    return bits;
}

/// B(V, W): cross-edge parities between V and every subset of W.
inline SignVector b_vector(const Pattern &p, const VertexSubset &v_set, const VertexSubset &w_set,
                           BMethod method = BMethod::enumerate) {
    detail::require_subset(p, v_set);
    detail::require_subset(p, w_set);
    if (!v_set.disjoint_from(w_set)) {
        throw std::invalid_argument("b_vector requires disjoint vertex sets");
    }
    detail::require_vector_size(w_set.size());
    if (method == BMethod::column_parity) {
        return b_hat(column_parity(p, v_set, w_set)).expand();
    }
    const std::uint64_t size = std::uint64_t{1} << w_set.size();
    std::vector<Sign> out(size);
    for (std::uint64_t k = 0; k < size; ++k) {
        out[k] = static_cast<Sign>(
            sign_parity(static_cast<long long>(edge_count_between(p, v_set, sel(w_set, k + 1)))));
    }
    return SignVector(std::move(out));
}

}  // namespace owpb
