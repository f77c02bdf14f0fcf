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

// Brute-force state-vector simulation of the positive branch
//
//   |i>  ->  <+|^(m-n) (x) 1 . Phi2 . Phi1 . (|i> (x) |+>^(m-n))
//
// one input basis column at a time. Phi1 multiplies the |1> component of
// every measured qubit k by e^{-i theta_k} (since <+_theta| = <+| Z_{-theta});
// Phi2 applies CZ on every edge. Everything is normalized, so the result is
// the physical amplitude of the post-selected branch.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "owpb/errors.hpp"
#include "owpb/matrix.hpp"
#include "owpb/pattern.hpp"
#include "owpb/signs.hpp"

namespace owpb {

/// Amplitudes of an m-qubit register. Qubit q (1-based) is digit q from the
/// left of the basis index, i.e. bit (m - q).
class StateVector {
   public:
    explicit StateVector(std::size_t qubits) : qubits_(qubits), amplitudes_(std::size_t{1} << qubits) {
    }

    /// |input_index> on the first `inputs` qubits, |+> on all others.
    static StateVector prepare(std::size_t qubits, std::size_t inputs, std::uint64_t input_index) {
        StateVector sv(qubits);
        const std::size_t rest = qubits - inputs;
        const double amp = std::pow(2.0, -0.5 * static_cast<double>(rest));
        const std::uint64_t base = input_index << rest;
        for (std::uint64_t low = 0; low < (std::uint64_t{1} << rest); ++low) {
            sv.amplitudes_[base | low] = amp;
        }
        return sv;
    }

    std::size_t qubits() const noexcept {
        return qubits_;
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }

    /// Z_phi on one qubit: |1> picks up e^{i phi}.
    void apply_phase(Label qubit, double phi) {
        const Complex phase = std::polar(1.0, phi);
        const std::uint64_t bit = std::uint64_t{1} << (qubits_ - qubit);
        for (std::uint64_t x = 0; x < amplitudes_.size(); ++x) {
            if (x & bit) {
                amplitudes_[x] *= phase;
            }
        }
    }

    void apply_cz(Label u, Label v) {
        const std::uint64_t both = (std::uint64_t{1} << (qubits_ - u)) | (std::uint64_t{1} << (qubits_ - v));
        for (std::uint64_t x = 0; x < amplitudes_.size(); ++x) {
            if ((x & both) == both) {
                amplitudes_[x] = -amplitudes_[x];
            }
        }
    }

    void apply_diagonal(const SignVector &diagonal) {
        if (diagonal.size() != amplitudes_.size()) {
            throw std::invalid_argument("diagonal length does not match the register");
        }
        for (std::uint64_t x = 0; x < amplitudes_.size(); ++x) {
            if (diagonal[x] < 0) {
                amplitudes_[x] = -amplitudes_[x];
            }
        }
    }

    /// Contract the first `measured` qubits against normalized <+| bras.
    /// Summation runs over ascending basis index.
    std::vector<Complex> project_plus(std::size_t measured) const {
        const std::size_t kept = qubits_ - measured;
        const double amp = std::pow(2.0, -0.5 * static_cast<double>(measured));
        std::vector<Complex> out(std::size_t{1} << kept);
        for (std::uint64_t high = 0; high < (std::uint64_t{1} << measured); ++high) {
            for (std::uint64_t low = 0; low < out.size(); ++low) {
                out[low] += amplitudes_[(high << kept) | low];
            }
        }
        for (Complex &z : out) {
            z *= amp;
        }
        return out;
    }

   private:
    std::size_t qubits_;
    std::vector<Complex> amplitudes_;
};

namespace detail {

inline void require_dense(const Pattern &p, const Limits &limits) {
    if (p.m() > limits.dense_max_qubits) {
        throw CapExceeded("dense simulation of " + std::to_string(p.m()) + " qubits exceeds the cap of " +
                          std::to_string(limits.dense_max_qubits) + " (raise --cap or OWPB_CAP)");
    }
}

}  // namespace detail

/// Diagonal of Phi2: entry l is SP(#E(induced by sel(V, l))).
inline SignVector phi2_diagonal(const Pattern &p, const Limits &limits = {}) {
    detail::require_dense(p, limits);
    const std::uint64_t size = std::uint64_t{1} << p.m();
    std::vector<Sign> out(size);
    for (std::uint64_t x = 0; x < size; ++x) {
        // With the pattern's bit convention the basis index is the vertex mask.
        out[x] = static_cast<Sign>(sign_parity(static_cast<long long>(p.edges_within(x))));
    }
    return SignVector(std::move(out));
}

/// Physical amplitudes of the positive branch for input basis state `column`
/// (0-based), applying CZ gates in `edge_order`.
inline std::vector<Complex> dense_column(const Pattern &p, std::uint64_t column, std::span<const Edge> edge_order) {
    StateVector sv = StateVector::prepare(p.m(), p.n(), column);
    for (Label k = 1; k <= p.measured_count(); ++k) {
        sv.apply_phase(k, -p.angle(k));
    }
    for (const Edge &e : edge_order) {
        sv.apply_cz(e.u, e.v);
    }
    return sv.project_plus(p.measured_count());
}

/// Full 2^n x 2^n physical matrix of the positive branch, CZ gates applied in
/// `edge_order` (any permutation of the pattern's edges gives the same map).
inline ComplexMatrix dense_positive_branch(const Pattern &p, std::span<const Edge> edge_order,
                                           const Limits &limits = {}) {
    detail::require_dense(p, limits);
    const std::size_t dim = std::size_t{1} << p.n();
    ComplexMatrix out(dim, dim, Scaling::physical);
    for (std::uint64_t i = 0; i < dim; ++i) {
        out.set_column(i, dense_column(p, i, edge_order));
    }
    return out;
}

inline ComplexMatrix dense_positive_branch(const Pattern &p, const Limits &limits = {}) {
    return dense_positive_branch(p, p.edges(), limits);
}

}  // namespace owpb
