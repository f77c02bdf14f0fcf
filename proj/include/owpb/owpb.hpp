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

#include "owpb/analysis.hpp"
#include "owpb/dense_oracle.hpp"
#include "owpb/errors.hpp"
#include "owpb/kronecker.hpp"
#include "owpb/matrix.hpp"
#include "owpb/pattern.hpp"
#include "owpb/pattern_io.hpp"
#include "owpb/sign_functions.hpp"
#include "owpb/signs.hpp"
#include "owpb/structured.hpp"
