#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The auctionmkt Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <stdexcept>
#include <string>

namespace auctionmkt {

/// Bad input: malformed values, violated preconditions, unknown keys.
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce an answer (no root, divergence,
/// singular design).
class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// CSV / config syntax problem; carries the 1-based line number.
class ParseError : public ValidationError
{
public:
  ParseError(std::size_t line, std::string const &what)
    : ValidationError("line " + std::to_string(line) + ": " + what)
    , line_(line)
  {}

  std::size_t line() const noexcept
  {
    return line_;
  }

private:
  std::size_t line_;
};

}  // namespace auctionmkt
