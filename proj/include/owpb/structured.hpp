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

// Column structure of the positive-branch matrix M.
//
// In raw scaling column i (1-based) of M is
//
//   M e_i = eps_i * B_i * phi
//         = eps_i * gamma_i * Delta_i * S * B * N * Omega_i * phi
//
// where eps_i is the product of e^{-i theta_k} over the inputs selected by
// sel(n, i), phi is the Kronecker product of [1, e^{-i theta}] over the pure
// auxiliaries, and B_i is the 2^n x 2^a sign pattern matrix
//
//   (B_i)_{p,q} = SP(#E(sel(I, i) u sel(Aux, q) u sel(O, p))).
//
// The six factors:
//   gamma_i = P(I)_i                 Delta_i = diag B(sel(I, i), O)
//   S       = diag P(O)              row p of B = B(sel(O, p), Aux)
//   N       = diag P(Aux)            Omega_i = diag B(sel(I, i), Aux)
//
// Physical amplitudes are 2^-(m-n) times raw.

#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "owpb/errors.hpp"
#include "owpb/kronecker.hpp"
#include "owpb/matrix.hpp"
#include "owpb/pattern.hpp"
#include "owpb/sign_functions.hpp"
#include "owpb/signs.hpp"

namespace owpb {

enum class StructuredMethod { theorem1, decomposition };

inline const char *to_string(StructuredMethod method) {
    return method == StructuredMethod::theorem1 ? "theorem1" : "decomposition";
}

namespace detail {

inline void require_column(const Pattern &p, std::uint64_t i, const char *what = "column") {
    const std::uint64_t dim = std::uint64_t{1} << p.n();
    if (i < 1 || i > dim) {
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                                std::to_string(dim));
    }
}

inline void require_sign_matrix(const Pattern &p, const Limits &limits) {
    if (p.n() + p.a() > limits.sign_matrix_max_log2) {
        throw CapExceeded("sign pattern matrices of 2^" + std::to_string(p.n() + p.a()) +
                          " entries exceed the cap of 2^" + std::to_string(limits.sign_matrix_max_log2));
    }
}

inline Sign sp(std::uint64_t count) {
    return (count & 1U) ? Sign{-1} : Sign{1};
}

}  // namespace detail

/// eps_i: product of e^{-i theta_k} over the inputs selected by sel(n, i).
inline Complex epsilon_phase(const Pattern &p, std::uint64_t i) {
    detail::require_column(p, i);
    const std::size_t n = p.n();
    double total = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (((i - 1) >> (n - k)) & 1U) {
            total += p.angle(static_cast<Label>(k));
        }
    }
    return std::polar(1.0, -total);
}

/// phi, factored: one [1, e^{-i theta}] per pure auxiliary, unnormalized.
inline KroneckerVector<Complex> phase_vector(const Pattern &p) {
    std::vector<KroneckerVector<Complex>::Factor> factors;
    factors.reserve(p.a());
    for (std::size_t k = 1; k <= p.a(); ++k) {
        factors.push_back({Complex{1.0, 0.0}, std::polar(1.0, -p.angle(static_cast<Label>(p.n() + k)))});
    }
    return KroneckerVector<Complex>(std::move(factors));
}

/// B_i together with its column index.
struct SignPatternMatrix {
    std::uint64_t column = 0;
    SignMatrix signs;

    friend bool operator==(const SignPatternMatrix &, const SignPatternMatrix &) = default;
};

/// B_i from induced-subgraph edge parities.
inline SignPatternMatrix sign_pattern_matrix(const Pattern &p, std::uint64_t i, const Limits &limits = {}) {
    detail::require_column(p, i);
    detail::require_sign_matrix(p, limits);
    const std::size_t rows = std::size_t{1} << p.n();
    const std::size_t cols = std::size_t{1} << p.a();
    const VertexSubset aux = p.auxiliaries();
    const VertexSubset outputs = p.outputs();
    const VertexMask input_mask = detail::selection_mask(p, p.inputs(), i - 1);

    std::vector<VertexMask> aux_masks(cols);
    for (std::size_t q = 0; q < cols; ++q) {
        aux_masks[q] = detail::selection_mask(p, aux, q);
    }
    SignPatternMatrix out{i, SignMatrix(rows, cols)};
    for (std::size_t r = 0; r < rows; ++r) {
        const VertexMask fixed = input_mask | detail::selection_mask(p, outputs, r);
        for (std::size_t q = 0; q < cols; ++q) {
            out.signs(r, q) = detail::sp(p.edges_within(fixed | aux_masks[q]));
        }
    }
    return out;
}

/// B_i read off the Phi2 diagonal b through the index arithmetic
/// (B_i)_{j,l} = b[(i-1) 2^(m-n) + (l-1) 2^n + j]   (all 1-based).
inline SignPatternMatrix sign_pattern_matrix_from_diagonal(const Pattern &p, const SignVector &phi2_diag,
                                                           std::uint64_t i) {
    detail::require_column(p, i);
    const std::size_t m = p.m();
    const std::size_t n = p.n();
    if (phi2_diag.size() != (std::size_t{1} << m)) {
        throw std::invalid_argument("Phi2 diagonal must have 2^m entries");
    }
    const std::size_t rows = std::size_t{1} << n;
    const std::size_t cols = std::size_t{1} << p.a();
    SignPatternMatrix out{i, SignMatrix(rows, cols)};
    for (std::uint64_t j = 1; j <= rows; ++j) {
        for (std::uint64_t l = 1; l <= cols; ++l) {
            const std::uint64_t b_index =
                (i - 1) * (std::uint64_t{1} << (m - n)) + (l - 1) * (std::uint64_t{1} << n) + j;
            out.signs(j - 1, l - 1) = phi2_diag[b_index - 1];
        }
    }
    return out;
}

/// The six factors of B_i for one column index.
struct FactorBundle {
    std::uint64_t column = 0;
    int gamma = 1;
    SignVector delta;   // diagonal, length 2^n
    SignVector s;       // diagonal, length 2^n
    SignMatrix b_full;  // 2^n x 2^a
    SignVector n_diag;  // diagonal, length 2^a
    SignVector omega;   // diagonal, length 2^a

    /// gamma * Delta * S * B * N * Omega, exactly.
    SignMatrix product() const {
        SignMatrix out(b_full.rows(), b_full.cols());
        for (std::size_t r = 0; r < b_full.rows(); ++r) {
            const int left = gamma * delta[r] * s[r];
            for (std::size_t q = 0; q < b_full.cols(); ++q) {
                out(r, q) = static_cast<Sign>(left * b_full(r, q) * n_diag[q] * omega[q]);
            }
        }
        return out;
    }
};

/// Column-independent factors S, B, N plus on-demand gamma_i, Delta_i, Omega_i.
class SignDecomposition {
   public:
    explicit SignDecomposition(Pattern p, const Limits &limits = {}) : pattern_(std::move(p)) {
        detail::require_sign_matrix(pattern_, limits);
        const VertexSubset outputs = pattern_.outputs();
        const VertexSubset aux = pattern_.auxiliaries();
        p_inputs_ = p_vector(pattern_, pattern_.inputs());
        s_ = p_vector(pattern_, outputs);
        n_diag_ = p_vector(pattern_, aux);
        const std::size_t rows = std::size_t{1} << pattern_.n();
        b_full_ = SignMatrix(rows, std::size_t{1} << pattern_.a());
        for (std::size_t r = 0; r < rows; ++r) {
            const SignVector row = b_vector(pattern_, sel(outputs, r + 1), aux, BMethod::column_parity);
            for (std::size_t q = 0; q < row.size(); ++q) {
                b_full_(r, q) = row[q];
            }
        }
    }

    const Pattern &pattern() const noexcept {
        return pattern_;
    }
    const SignVector &s() const noexcept {
        return s_;
    }
    const SignMatrix &b_full() const noexcept {
        return b_full_;
    }
    const SignVector &n_diag() const noexcept {
        return n_diag_;
    }

    int gamma(std::uint64_t i) const {
        detail::require_column(pattern_, i);
        return p_inputs_[i - 1];
    }
    SignVector delta(std::uint64_t i) const {
        detail::require_column(pattern_, i);
        return b_vector(pattern_, sel(pattern_.inputs(), i), pattern_.outputs());
    }
    SignVector omega(std::uint64_t i) const {
        detail::require_column(pattern_, i);
        return b_vector(pattern_, sel(pattern_.inputs(), i), pattern_.auxiliaries(), BMethod::column_parity);
    }

    FactorBundle bundle(std::uint64_t i) const {
        return FactorBundle{i, gamma(i), delta(i), s_, b_full_, n_diag_, omega(i)};
    }

   private:
    Pattern pattern_;
    SignVector p_inputs_;
    SignVector s_;
    SignMatrix b_full_;
    SignVector n_diag_;
};

inline FactorBundle decompose_column_factors(const Pattern &p, std::uint64_t i, const Limits &limits = {}) {
    detail::require_column(p, i);
    return SignDecomposition(p, limits).bundle(i);
}

/// The 2^n x 2^n matrix assembled column by column from the structured formulas.
inline ComplexMatrix structured_matrix(const Pattern &p, StructuredMethod method = StructuredMethod::decomposition,
                                       Scaling scaling = Scaling::raw, const Limits &limits = {}) {
    detail::require_sign_matrix(p, limits);
    const std::size_t dim = std::size_t{1} << p.n();
    const std::vector<Complex> phi = phase_vector(p).expand();
    ComplexMatrix out(dim, dim, Scaling::raw);
    std::vector<Complex> column(dim);

    if (method == StructuredMethod::theorem1) {
        for (std::uint64_t i = 1; i <= dim; ++i) {
            const Complex eps = epsilon_phase(p, i);
            const SignPatternMatrix bi = sign_pattern_matrix(p, i, limits);
            for (std::size_t r = 0; r < dim; ++r) {
                Complex acc{0.0, 0.0};
                for (std::size_t q = 0; q < phi.size(); ++q) {
                    acc += static_cast<double>(bi.signs(r, q)) * phi[q];
                }
                column[r] = eps * acc;
            }
            out.set_column(i - 1, column);
        }
    } else {
        const SignDecomposition dec(p, limits);
        for (std::uint64_t i = 1; i <= dim; ++i) {
            const Complex eps = epsilon_phase(p, i);
            const int gamma = dec.gamma(i);
            const SignVector delta = dec.delta(i);
            const SignVector omega = dec.omega(i);
            // N * Omega_i * phi does not depend on the row.
            std::vector<Complex> tail(phi.size());
            for (std::size_t q = 0; q < phi.size(); ++q) {
                tail[q] = static_cast<double>(dec.n_diag()[q] * omega[q]) * phi[q];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                Complex acc{0.0, 0.0};
                for (std::size_t q = 0; q < phi.size(); ++q) {
                    acc += static_cast<double>(dec.b_full()(r, q)) * tail[q];
                }
                column[r] = eps * static_cast<double>(gamma * delta[r] * dec.s()[r]) * acc;
            }
            out.set_column(i - 1, column);
        }
    }
    if (scaling == Scaling::physical) {
        return out.rescaled(physical_factor(p.m(), p.n()), Scaling::physical);
    }
    return out;
}

/// Single raw entries in O(a + m) each, valid when no two pure auxiliaries
/// are adjacent (N is the identity). Row p of B * Omega_i is then the B-hat
/// vector of v_p XOR w_i, so its dot product with phi factorizes:
///
///   M_{p,i} = eps_i gamma_i (Delta_i)_p S_p prod_k (1 + (-1)^{(v_p ^ w_i)_k} e^{-i theta_{n+k}})
///
/// with v_p = column_parity(sel(O, p), Aux) and w_i = column_parity(sel(I, i), Aux).
class FastEntryEvaluator {
   public:
    explicit FastEntryEvaluator(Pattern p) : pattern_(std::move(p)) {
        const std::size_t n = pattern_.n();
        const std::size_t a = pattern_.a();
        const VertexMask aux_mask = aux_bits(a) << n;
        for (Label v = static_cast<Label>(n + 1); v <= n + a; ++v) {
            if (pattern_.neighbors(v) & aux_mask) {
                throw PreconditionViolated(
                    "fast entry path needs pairwise non-adjacent pure auxiliaries; use the dense path");
            }
        }
        aux_parity_.resize(pattern_.m() + 1, 0);
        for (Label v = 1; v <= pattern_.m(); ++v) {
            aux_parity_[v] = (pattern_.neighbors(v) & aux_mask) >> n;
        }
        aux_phase_.reserve(a);
        for (std::size_t k = 1; k <= a; ++k) {
            aux_phase_.push_back(std::polar(1.0, -pattern_.angle(static_cast<Label>(n + k))));
        }
    }

    const Pattern &pattern() const noexcept {
        return pattern_;
    }

    /// Raw entry at 1-based (row, col).
    Complex entry(std::uint64_t row, std::uint64_t col) const {
        detail::require_column(pattern_, row, "row");
        detail::require_column(pattern_, col);
        const std::size_t m = pattern_.m();
        const std::size_t n = pattern_.n();
        const std::size_t a = pattern_.a();
        // In the pattern's bit convention the selected outputs are the low n
        // bits and the selected inputs the high n bits.
        const VertexMask out_mask = row - 1;
        const VertexMask in_mask = (col - 1) << (m - n);

        const int sign = detail::sp(pattern_.edges_within(in_mask)) *
                         detail::sp(pattern_.edges_between(in_mask, out_mask)) *
                         detail::sp(pattern_.edges_within(out_mask));
        std::uint64_t parity = 0;
        for (VertexMask rest = in_mask | out_mask; rest != 0; rest &= rest - 1) {
            parity ^= aux_parity_[m - static_cast<std::size_t>(std::countr_zero(rest))];
        }
        Complex product{1.0, 0.0};
        for (std::size_t k = 1; k <= a; ++k) {
            const bool odd = ((parity >> (a - k)) & 1U) != 0;
            product *= odd ? Complex{1.0, 0.0} - aux_phase_[k - 1] : Complex{1.0, 0.0} + aux_phase_[k - 1];
        }
        return epsilon_phase(pattern_, col) * static_cast<double>(sign) * product;
    }

   private:
    static VertexMask aux_bits(std::size_t a) {
        return a >= 64 ? ~VertexMask{0} : (VertexMask{1} << a) - 1;
    }

    Pattern pattern_;
    std::vector<std::uint64_t> aux_parity_;  // indexed by label
    std::vector<Complex> aux_phase_;
};

inline Complex fast_entry(const Pattern &p, std::uint64_t row, std::uint64_t col) {
    return FastEntryEvaluator(p).entry(row, col);
}

/// Raw entry by materializing row `row` of B_i and dotting it with the expanded phi.
inline Complex expanded_entry(const Pattern &p, std::uint64_t row, std::uint64_t col, const Limits &limits = {}) {
    detail::require_column(p, row, "row");
    detail::require_column(p, col);
    if (p.a() > limits.sign_matrix_max_log2) {
        throw CapExceeded("a row of 2^" + std::to_string(p.a()) + " signs exceeds the cap of 2^" +
                          std::to_string(limits.sign_matrix_max_log2));
    }
    const VertexMask fixed =
        detail::selection_mask(p, p.inputs(), col - 1) | detail::selection_mask(p, p.outputs(), row - 1);
    const VertexSubset aux = p.auxiliaries();
    const KroneckerVector<Complex> phi = phase_vector(p);
    Complex acc{0.0, 0.0};
    for (std::uint64_t q = 0; q < phi.expanded_size(); ++q) {
        acc += static_cast<double>(detail::sp(p.edges_within(fixed | detail::selection_mask(p, aux, q)))) *
               phi.entry(q);
    }
    return epsilon_phase(p, col) * acc;
}

}  // namespace owpb
