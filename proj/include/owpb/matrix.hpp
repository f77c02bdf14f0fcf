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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "owpb/errors.hpp"

namespace owpb {

using Complex = std::complex<double>;

/// Raw keeps the exact +-1 / unit-phase structure; physical is the amplitude
/// of the actual post-selected branch, 2^-(m-n) times raw.
enum class Scaling { raw, physical };

inline const char *to_string(Scaling s) {
    return s == Scaling::raw ? "raw" : "physical";
}

/// Memory guards.
struct Limits {
    /// Largest register the dense simulator will allocate (2^m amplitudes).
    std::size_t dense_max_qubits = 22;
    /// Largest sign pattern matrix materialized, as log2 of its entry count (2^n * 2^a).
    std::size_t sign_matrix_max_log2 = 24;

    /// Defaults, with OWPB_CAP overriding the dense qubit cap when set.
    static Limits from_environment() {
        Limits limits;
        if (const char *env = std::getenv("OWPB_CAP"); env != nullptr && *env != '\0') {
            char *end = nullptr;
            const unsigned long value = std::strtoul(env, &end, 10);
            if (end == nullptr || *end != '\0') {
                throw std::invalid_argument(std::string("OWPB_CAP must be a non-negative integer, got \"") + env +
                                            "\"");
            }
            limits.dense_max_qubits = value;
        }
        return limits;
    }
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, Scaling scaling)
        : rows_(rows), cols_(cols), scaling_(scaling), entries_(rows * cols) {
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    Scaling scaling() const noexcept {
        return scaling_;
    }

    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    std::vector<Complex> column(std::size_t c) const {
        std::vector<Complex> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            out[r] = (*this)(r, c);
        }
        return out;
    }

    void set_column(std::size_t c, std::span<const Complex> values) {
        if (values.size() != rows_) {
            throw std::invalid_argument("column length mismatch");
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            (*this)(r, c) = values[r];
        }
    }

    /// Copy multiplied by `factor`, relabeled with `scaling`.
    ComplexMatrix rescaled(double factor, Scaling scaling) const {
        ComplexMatrix out = *this;
        out.scaling_ = scaling;
        for (Complex &z : out.entries_) {
            z *= factor;
        }
        return out;
    }

    /// A^H A.
    ComplexMatrix gram() const {
        ComplexMatrix out(cols_, cols_, scaling_);
        for (std::size_t i = 0; i < cols_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t r = 0; r < rows_; ++r) {
                    acc += std::conj((*this)(r, i)) * (*this)(r, j);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Scaling scaling_ = Scaling::raw;
    std::vector<Complex> entries_;
};

/// Largest entrywise modulus of a - b. Shapes must match.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shapes differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

/// 2^-(m-n): physical amplitude per raw unit.
inline double physical_factor(std::size_t m, std::size_t n) {
    return std::ldexp(1.0, -static_cast<int>(m - n));
}

}  // namespace owpb
