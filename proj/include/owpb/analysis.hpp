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

// Determinism and equality checks on top of the structured matrix.
//
// A pattern is treated as deterministic when the Gram matrix of its raw
// matrix is proportional to the identity. Input angles only rescale columns
// by unit phases, so uniform determinism is probed over auxiliary angles only.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "owpb/matrix.hpp"
#include "owpb/pattern.hpp"
#include "owpb/structured.hpp"

namespace owpb {

inline constexpr double kDefaultTolerance = 1e-9;

struct DeterminismVerdict {
    bool deterministic = false;
    double lambda = 0.0;  // mean Gram diagonal, raw scaling
    double max_deviation = 0.0;
    bool strongly_uniform_probability = false;  // lambda == 2^(m-n)
};

struct UniformVerdict {
    bool uniform = false;
    std::size_t samples_checked = 0;
    std::optional<std::vector<double>> witness;  // full angle assignment, indexed by label - 1
    std::uint64_t seed = 0;
};

struct EqualityVerdict {
    bool equal = false;
    double max_deviation = 0.0;
};

/// Raw Gram matrix: entry (i, j) = <column i, column j>.
inline ComplexMatrix gram(const Pattern &p, const Limits &limits = {}) {
    return structured_matrix(p, StructuredMethod::decomposition, Scaling::raw, limits).gram();
}

inline DeterminismVerdict check_determinism(const Pattern &p, double tol = kDefaultTolerance,
                                            const Limits &limits = {}) {
    const ComplexMatrix g = gram(p, limits);
    const std::size_t dim = g.rows();
    double trace = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        trace += g(k, k).real();
    }
    DeterminismVerdict verdict;
    verdict.lambda = trace / static_cast<double>(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            const Complex expected = (r == c) ? Complex{verdict.lambda, 0.0} : Complex{0.0, 0.0};
            verdict.max_deviation = std::max(verdict.max_deviation, std::abs(g(r, c) - expected));
        }
    }
    verdict.deterministic = verdict.max_deviation <= tol;
    verdict.strongly_uniform_probability =
        std::abs(verdict.lambda - std::ldexp(1.0, static_cast<int>(p.m() - p.n()))) <= tol;
    return verdict;
}

namespace detail {

inline constexpr std::size_t kMaxProbes = 256;

/// Angle k of probe `index` over the grid {0, pi/2, pi, 3pi/2}^a, first
/// auxiliary as the most significant base-4 digit.
inline std::vector<double> probe_angles(std::size_t a, std::uint64_t index) {
    std::vector<double> angles(a);
    for (std::size_t k = a; k-- > 0;) {
        angles[k] = static_cast<double>(index % 4) * (std::numbers::pi / 2);
        index /= 4;
    }
    return angles;
}

inline std::uint64_t probe_count(std::size_t a) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < a && count < kMaxProbes; ++k) {
        count *= 4;
    }
    return std::min<std::uint64_t>(count, kMaxProbes);
}

/// Uniform angles in [0, 2pi) for one sample, from a stream keyed by (seed, sample).
inline std::vector<double> sample_angles(std::size_t a, std::uint64_t seed, std::uint64_t sample) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
    std::mt19937_64 gen(seq);
    std::vector<double> angles(a);
    for (double &theta : angles) {
        theta = static_cast<double>(gen() >> 11) * 0x1.0p-53 * (2 * std::numbers::pi);
    }
    return angles;
}

inline std::vector<double> with_aux_angles(const Pattern &p, const std::vector<double> &aux) {
    std::vector<double> all(p.angles().begin(), p.angles().end());
    for (std::size_t k = 0; k < aux.size(); ++k) {
        all[p.n() + k] = aux[k];
    }
    return all;
}

}  // namespace detail

/// Probes the grid {0, pi/2, pi, 3pi/2}^a (at most 256 points, in order) and
/// then `samples` uniformly random auxiliary angle assignments. Input angles
/// stay fixed. `uniform` means no counterexample was found; on failure the
/// first failing assignment is returned as the witness.
inline UniformVerdict check_uniform_determinism(const Pattern &p, std::size_t samples, std::uint64_t seed,
                                                double tol = kDefaultTolerance, const Limits &limits = {}) {
    if (samples < 1) {
        throw std::invalid_argument("uniform determinism check needs at least one sample");
    }
    UniformVerdict verdict;
    verdict.seed = seed;
    auto check = [&](const std::vector<double> &aux) {
        ++verdict.samples_checked;
        const Pattern probe = p.with_angles(detail::with_aux_angles(p, aux));
        if (!check_determinism(probe, tol, limits).deterministic) {
            verdict.witness = std::vector<double>(probe.angles().begin(), probe.angles().end());
            return false;
        }
        return true;
    };
    const std::uint64_t probes = detail::probe_count(p.a());
    for (std::uint64_t k = 0; k < probes; ++k) {
        if (!check(detail::probe_angles(p.a(), k))) {
            return verdict;
        }
    }
    if (p.a() > 0) {
        for (std::uint64_t s = 0; s < samples; ++s) {
            if (!check(detail::sample_angles(p.a(), seed, s))) {
                return verdict;
            }
        }
    }
    verdict.uniform = true;
    return verdict;
}

namespace detail {

/// Unit phase of the largest-magnitude entry; ties (within relative 1e-12)
/// go to the lowest row-major index.
inline Complex anchor_phase(const ComplexMatrix &mat) {
    double largest = 0.0;
    for (const Complex &z : mat.entries()) {
        largest = std::max(largest, std::abs(z));
    }
    if (largest == 0.0) {
        return {1.0, 0.0};
    }
    for (const Complex &z : mat.entries()) {
        if (std::abs(z) >= largest * (1.0 - 1e-12)) {
            return z / std::abs(z);
        }
    }
    return {1.0, 0.0};
}

}  // namespace detail

/// Entrywise comparison of the physical matrices, optionally after dividing
/// each by the phase of its anchor entry.
inline EqualityVerdict patterns_equal(const Pattern &pa, const Pattern &pb, double tol = kDefaultTolerance,
                                      bool up_to_global_phase = false, const Limits &limits = {}) {
    if (pa.n() != pb.n()) {
        throw std::invalid_argument("patterns act on different input counts (" + std::to_string(pa.n()) + " vs " +
                                    std::to_string(pb.n()) + ")");
    }
    ComplexMatrix ma = structured_matrix(pa, StructuredMethod::decomposition, Scaling::physical, limits);
    ComplexMatrix mb = structured_matrix(pb, StructuredMethod::decomposition, Scaling::physical, limits);
    if (up_to_global_phase) {
        const Complex za = std::conj(detail::anchor_phase(ma));
        const Complex zb = std::conj(detail::anchor_phase(mb));
        ComplexMatrix na(ma.rows(), ma.cols(), Scaling::physical);
        ComplexMatrix nb(mb.rows(), mb.cols(), Scaling::physical);
        for (std::size_t r = 0; r < ma.rows(); ++r) {
            for (std::size_t c = 0; c < ma.cols(); ++c) {
                na(r, c) = ma(r, c) * za;
                nb(r, c) = mb(r, c) * zb;
            }
        }
        ma = std::move(na);
        mb = std::move(nb);
    }
    EqualityVerdict verdict;
    verdict.max_deviation = max_abs_diff(ma, mb);
    verdict.equal = verdict.max_deviation <= tol;
    return verdict;
}

}  // namespace owpb
