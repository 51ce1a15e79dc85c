// Copyright 2026 The topoising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace topoising {

class TopoisingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    virtual const char *code() const noexcept { return "error"; }
};

/// The wrapped lattice admits no valid face 3-coloring at the requested size.
class NotThreeColorable : public TopoisingError {
   public:
    using TopoisingError::TopoisingError;
    const char *code() const noexcept override { return "not_three_colorable"; }
};

/// A real-spin bond anticommutes with a number of X-type generators other than two.
class MappingObstruction : public TopoisingError {
   public:
    MappingObstruction(std::size_t bond, std::size_t count)
        : TopoisingError("bond " + std::to_string(bond) + " anticommutes with " + std::to_string(count) +
                         " X-type generators (expected 2)"),
          bond_index(bond),
          anticommuting_count(count) {}
    const char *code() const noexcept override { return "mapping_obstruction"; }

    std::size_t bond_index;
    std::size_t anticommuting_count;
};

/// A proposed logical operator fails to commute with the stabilizers or is
/// itself a stabilizer.
class InvalidLogicalOperator : public TopoisingError {
   public:
    using TopoisingError::TopoisingError;
    const char *code() const noexcept override { return "invalid_logical"; }
};

class UnsupportedModel : public TopoisingError {
   public:
    using TopoisingError::TopoisingError;
    const char *code() const noexcept override { return "unsupported"; }
};

class ConvergenceError : public TopoisingError {
   public:
    ConvergenceError(const std::string &what, std::vector<double> residual_norms)
        : TopoisingError(what), residuals(std::move(residual_norms)) {}
    const char *code() const noexcept override { return "no_convergence"; }

    std::vector<double> residuals;
};

}  // namespace topoising
