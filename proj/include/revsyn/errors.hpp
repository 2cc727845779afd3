// Copyright 2026 The revsyn Authors
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

namespace revsyn {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class not_bijective : public error {
   public:
    using error::error;
};

class length_mismatch : public error {
   public:
    using error::error;
};

/// A bit-width or line count is above the configured cap.
class cap_exceeded : public error {
   public:
    using error::error;
};

/// Argument outside the domain of a counting or cost formula.
class domain_error : public error {
   public:
    using error::error;
};

/// Search-space guard of the brute-force oracle tripped.
class too_large : public error {
   public:
    using error::error;
};

class odd_permutation : public error {
   public:
    using error::error;
};

/// No perfect cover exists for a pairing class.
class infeasible : public error {
   public:
    using error::error;
};

class routing_failed : public error {
   public:
    using error::error;
};

class order_violation : public error {
   public:
    using error::error;
};

class unknown_variable : public error {
   public:
    using error::error;
};

/// Text input error carrying a 1-based line and column.
class parse_error : public error {
   public:
    parse_error(std::string const& message, std::size_t line, std::size_t column)
        : error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace revsyn
