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

#include <stdexcept>
#include <string>

namespace owpb {

/// A malformed or inconsistent pattern document. `field()` names the offending key.
class PatternError : public std::invalid_argument {
   public:
    PatternError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {
    }

    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

/// A computation would materialize more memory than the configured cap allows.
class CapExceeded : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// The operation's structural precondition does not hold for this pattern
/// (for instance the fast entry path on a pattern with auxiliary-auxiliary edges).
class PreconditionViolated : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace owpb
