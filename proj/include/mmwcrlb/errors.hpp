// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The mmwave-crlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace mmwcrlb {

enum class ErrorCode {
  domain,              // argument outside a function's mathematical domain
  range,               // argument would overflow the result
  dimension_mismatch,
  unsupported_config,  // e.g. orthogonal codebook with more pilots than elements
  missing_argument,    // two-path builder without its second angle
  rayleigh_divergence, // K = 0: prior Fisher information and E[1/a^2] diverge
  ill_conditioned,     // Fisher matrix cannot be inverted reliably
  config,              // malformed sweep / CLI configuration
};

const char* to_string(ErrorCode code) noexcept;

/// Base class for every error raised by the library. The code lets callers
/// (notably the CLI) map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mmwcrlb
