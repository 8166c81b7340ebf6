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

#include "mmwcrlb/errors.hpp"

namespace mmwcrlb {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::range: return "range";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::unsupported_config: return "unsupported-config";
    case ErrorCode::missing_argument: return "missing-argument";
    case ErrorCode::rayleigh_divergence: return "rayleigh-divergence";
    case ErrorCode::ill_conditioned: return "ill-conditioned";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

}  // namespace mmwcrlb
