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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace owpb {

using Sign = std::int8_t;

/// (-1)^k. Negative k use the parity of |k|.
constexpr int sign_parity(long long k) noexcept {
    return (k % 2 == 0) ? 1 : -1;
}

/// Dense vector of exact +-1 entries.
class SignVector {
   public:
    SignVector() = default;

    explicit SignVector(std::vector<Sign> entries) : entries_(std::move(entries)) {
        for (Sign s : entries_) {
            if (s != 1 && s != -1) {
                throw std::invalid_argument("sign vector entries must be +1 or -1");
            }
        }
    }

    static SignVector ones(std::size_t size) {
        SignVector out;
        out.entries_.assign(size, Sign{1});
        return out;
    }

    std::size_t size() const noexcept {
        return entries_.size();
    }
    Sign operator[](std::size_t k) const {
        return entries_[k];
    }
    std::span<const Sign> entries() const noexcept {
        return entries_;
    }
    auto begin() const noexcept {
        return entries_.begin();
    }
    auto end() const noexcept {
        return entries_.end();
    }

    bool all_ones() const noexcept {
        for (Sign s : entries_) {
            if (s != 1) {
                return false;
            }
        }
        return true;
    }

    /// Pointwise product.
    SignVector &operator*=(const SignVector &other) {
        if (other.size() != size()) {
            throw std::invalid_argument("pointwise product of sign vectors of different lengths");
        }
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] = static_cast<Sign>(entries_[k] * other.entries_[k]);
        }
        return *this;
    }
    friend SignVector operator*(SignVector lhs, const SignVector &rhs) {
        lhs *= rhs;
        return lhs;
    }

    friend bool operator==(const SignVector &, const SignVector &) = default;

   private:
    std::vector<Sign> entries_;
};

/// Dense row-major matrix of exact +-1 entries.
class SignMatrix {
   public:
    SignMatrix() = default;
    SignMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Sign{1}) {
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    Sign operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    Sign &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    std::span<const Sign> row(std::size_t r) const {
        return std::span<const Sign>(entries_).subspan(r * cols_, cols_);
    }
    std::span<const Sign> entries() const noexcept {
        return entries_;
    }

    friend bool operator==(const SignMatrix &, const SignMatrix &) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Sign> entries_;
};

}  // namespace owpb
