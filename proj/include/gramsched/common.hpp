/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef GRAMSCHED_COMMON_HPP
#define GRAMSCHED_COMMON_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gramsched {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Bad shapes, bad preconditions, malformed files.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Gramian (or any matrix that has to be inverted) is singular to working
/// precision. For a scheduling problem this almost always means the system
/// is not minimal over the chosen horizon.
class NearSingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The barrier sparsifier could not find an admissible index.
class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested problem exceeds the configured memory budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on the number of matrix entries any single block matrix
/// (reachability, observability, Hankel) may allocate.
inline constexpr std::size_t kDefaultEntryBudget = std::size_t{1} << 27;

}  // namespace gramsched

#endif  // GRAMSCHED_COMMON_HPP
