/*
 * Copyright 2026 The fogrep authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FOGREP_CORE_ERROR_HPP
#define FOGREP_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fogrep {

enum class ErrorCode {
    InvalidArgument,  // bad parameter value
    Validation,       // malformed graph/scenario input
    Topology,         // structurally impossible request (e.g. no uplink candidates)
    Connectivity,     // required path/reachability missing
    Lookup,           // unknown or down device referenced
    Capacity,         // storage constraint cannot be satisfied
    Numeric,          // iteration failed to converge
    Parse,            // text format error
    Io,               // file system error
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fogrep

#endif
