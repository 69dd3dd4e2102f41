// Copyright 2026 The lnn Authors
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

#ifndef LNN_ERRORS_HPP
#define LNN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lnn {

/// 1-based position of a token in knowledge-base source text.
struct SourceSpan {
    int line = 0;
    int column = 0;
};

class Error : public std::runtime_error {
   public:
    explicit Error(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

/// Rejected input text: bad syntax, undeclared symbols, arity mismatches.
class ParseError : public Error {
   public:
    ParseError(SourceSpan span, const std::string &what_arg)
        : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + what_arg),
          span_(span) {}

    SourceSpan span() const {
        return span_;
    }

   private:
    SourceSpan span_;
};

/// Rejected run configuration (thresholds, pass limits, rates).
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// A substitution that would capture a free variable of the replacement term.
class CaptureError : public Error {
   public:
    using Error::Error;
};

/// A knowledge base that cannot be turned into a network in its current form.
class CompileError : public Error {
   public:
    using Error::Error;
};

/// A broken internal invariant. Callers should treat this as a bug.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace lnn

#endif
