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

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "owpb/signs.hpp"

namespace owpb {

/// A length-2^k vector kept as the Kronecker product of k length-2 factors.
/// The first factor is the most significant: entry x of the expansion is the
/// product over j of factor j at digit j (from the left) of x.
template <typename T>
class KroneckerVector {
   public:
    using Factor = std::array<T, 2>;

    KroneckerVector() = default;
    explicit KroneckerVector(std::vector<Factor> factors) : factors_(std::move(factors)) {
    }

    std::size_t factor_count() const noexcept {
        return factors_.size();
    }
    const std::vector<Factor> &factors() const noexcept {
        return factors_;
    }
    std::uint64_t expanded_size() const {
        if (factors_.size() >= 64) {
            throw std::length_error("Kronecker vector too long to index");
        }
        return std::uint64_t{1} << factors_.size();
    }

    /// Single entry of the expansion, without materializing it.
    T entry(std::uint64_t index) const {
        T out{1};
        const std::size_t k = factors_.size();
        for (std::size_t j = 0; j < k; ++j) {
            out *= factors_[j][(index >> (k - 1 - j)) & 1U];
        }
        return out;
    }

    std::vector<T> expand() const {
        std::vector<T> out{T{1}};
        out.reserve(expanded_size());
        for (const Factor &f : factors_) {
            std::vector<T> next;
            next.reserve(out.size() * 2);
            for (const T &x : out) {
                next.push_back(x * f[0]);
                next.push_back(x * f[1]);
            }
            out = std::move(next);
        }
        return out;
    }

   private:
    std::vector<Factor> factors_;
};

/// Symmetric dot product of two Kronecker vectors with equally many factors:
/// (X1 (x) ... (x) Xk, Y1 (x) ... (x) Yk) = prod_j (Xj, Yj).
template <typename T, typename U>
auto kron_dot(const KroneckerVector<T> &x, const KroneckerVector<U> &y) {
    if (x.factor_count() != y.factor_count()) {
        throw std::invalid_argument("Kronecker dot product needs equal factor counts");
    }
    using R = decltype(T{} * U{});
    R out{1};
    for (std::size_t j = 0; j < x.factor_count(); ++j) {
        const auto &a = x.factors()[j];
        const auto &b = y.factors()[j];
        out *= a[0] * b[0] + a[1] * b[1];
    }
    return out;
}

/// Kronecker sign vector given by bits: the factor for bit b is [1, (-1)^b].
class KroneckerSignVector {
   public:
    KroneckerSignVector() = default;
    explicit KroneckerSignVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto &b : bits_) {
            b &= 1U;
        }
    }

    const std::vector<std::uint8_t> &bits() const noexcept {
        return bits_;
    }

    Sign entry(std::uint64_t index) const {
        const std::size_t k = bits_.size();
        unsigned parity = 0;
        for (std::size_t j = 0; j < k; ++j) {
            parity ^= bits_[j] & ((index >> (k - 1 - j)) & 1U);
        }
        return parity ? Sign{-1} : Sign{1};
    }

    SignVector expand() const {
        std::vector<Sign> out{1};
        for (std::uint8_t b : bits_) {
            std::vector<Sign> next;
            next.reserve(out.size() * 2);
            for (Sign x : out) {
                next.push_back(x);
                next.push_back(b ? static_cast<Sign>(-x) : x);
            }
            out = std::move(next);
        }
        return SignVector(std::move(out));
    }

    template <typename T>
    KroneckerVector<T> as_factors() const {
        std::vector<typename KroneckerVector<T>::Factor> factors;
        factors.reserve(bits_.size());
        for (std::uint8_t b : bits_) {
            factors.push_back({T{1}, b ? T{-1} : T{1}});
        }
        return KroneckerVector<T>(std::move(factors));
    }

    friend bool operator==(const KroneckerSignVector &, const KroneckerSignVector &) = default;

   private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace owpb
