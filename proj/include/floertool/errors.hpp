// Copyright 2026 The floertool Authors
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

namespace floertool {

/// Violation of a documented precondition (mixed fields, invalid polytope,
/// non-critical rho, ...). Maps to CLI exit code 1.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input file or option could not be parsed. Maps to CLI exit code 2.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inexact ring division where exactness was required. Deliberately distinct
/// from domain_error so an elimination bug cannot masquerade as bad input.
class division_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// An invariant of the implementation itself failed.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace floertool
