/*
   Copyright 2026 The entropyforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ENTROPYFORGE_ERRORS_HPP
#define ENTROPYFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entropyforge {

/// Error categories surfaced by the library.  Analysis-level failures
/// (nonconfinement where confinement was asserted, etc.) are reported via
/// return values, not exceptions; exceptions mean the request itself was
/// unserviceable.
enum class ErrorKind {
    invalid_input,
    syntax,
    unbound_symbol,
    singular_series,
    precision_exhausted,
    degenerate_orbit,
    insufficient_data,
    window,
    not_gauge_equivalent,
    invalid_constraint,
    resource,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::syntax: return "syntax-error";
        case ErrorKind::unbound_symbol: return "unbound-symbol";
        case ErrorKind::singular_series: return "singular-series";
        case ErrorKind::precision_exhausted: return "precision-exhausted";
        case ErrorKind::degenerate_orbit: return "degenerate-orbit";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::window: return "window-error";
        case ErrorKind::not_gauge_equivalent: return "not-gauge-equivalent";
        case ErrorKind::invalid_constraint: return "invalid-constraint";
        case ErrorKind::resource: return "resource-error";
        case ErrorKind::internal: return "internal-error";
    }
    return "unknown";
}

}  // namespace entropyforge

#endif
