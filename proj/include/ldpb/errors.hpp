// Copyright 2026 The ldp-bayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ldpb {

// Raised when an argument violates a documented precondition.
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a numerical routine cannot produce a trustworthy result
// (failed bracketing, non-convergence).
class numeric_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a matrix factorization required by a likelihood fails.
class decomposition_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when MCMC cannot produce usable draws (e.g. every transition
// diverged).
class sampling_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an experiment run violates its own quality policy.
class experiment_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ldpb
