/* Copyright 2026 The ScenarioBench Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SCENARIOBENCH_ERRORS_HPP_
#define SCENARIOBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scenariobench {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad or missing configuration (CLI exit code 2).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A scenario spec or graph violates its contract (CLI exit code 4).
struct SpecError : Error {
  explicit SpecError(const std::string& msg) : Error(msg) {}
};

/// Failure while executing a run: I/O, network, engine (CLI exit code 3).
struct RunError : Error {
  explicit RunError(const std::string& msg) : Error(msg) {}
};

}  // namespace scenariobench

#endif  // SCENARIOBENCH_ERRORS_HPP_
