// Copyright 2026 The Droidbench Authors
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

#ifndef DROIDBENCH_ERROR_HPP
#define DROIDBENCH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace droidbench {

// Root of every error the library throws. Callers that only care about
// success/failure catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for inputs that violate an operation's preconditions in a way the
// user can fix by changing arguments (k too large, unknown algorithm). The
// CLI maps it to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

#define DROIDBENCH_DEFINE_ERROR(Name, Base) \
  class Name : public Base {                \
   public:                                  \
    using Base::Base;                       \
  };

// session-orchestrator
DROIDBENCH_DEFINE_ERROR(DeviceError, Error)
DROIDBENCH_DEFINE_ERROR(DriverFailure, Error)

// dataset
DROIDBENCH_DEFINE_ERROR(UnlabeledApp, Error)
DROIDBENCH_DEFINE_ERROR(AttributeMismatch, Error)
DROIDBENCH_DEFINE_ERROR(DatasetTooSmall, Error)
DROIDBENCH_DEFINE_ERROR(UnknownFeature, UsageError)
DROIDBENCH_DEFINE_ERROR(LabelConflict, Error)
DROIDBENCH_DEFINE_ERROR(InvalidDataset, Error)

// ranking
DROIDBENCH_DEFINE_ERROR(EmptyCounts, Error)
DROIDBENCH_DEFINE_ERROR(KTooLarge, UsageError)

// classifiers
DROIDBENCH_DEFINE_ERROR(SingleClassDataset, Error)
DROIDBENCH_DEFINE_ERROR(Divergence, Error)
DROIDBENCH_DEFINE_ERROR(DimensionMismatch, Error)
DROIDBENCH_DEFINE_ERROR(ModelFormatError, Error)

// evaluation
DROIDBENCH_DEFINE_ERROR(LengthMismatch, Error)

// corpus-gen and file plumbing
DROIDBENCH_DEFINE_ERROR(IoFailure, Error)

#undef DROIDBENCH_DEFINE_ERROR

// A log line that does not follow the logcat grammar. `offset` is the byte
// offset of the first character that violates it.
class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t offset, const std::string& what)
      : Error("malformed log line at byte " + std::to_string(offset) + ": " +
              what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Errors tied to a 1-based line of an input file.
class LineError : public Error {
 public:
  LineError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ArffSyntax : public LineError {
 public:
  using LineError::LineError;
};

class ConfigError : public LineError {
 public:
  using LineError::LineError;
};

class SignatureFileError : public LineError {
 public:
  using LineError::LineError;
};

class DuplicateSignature : public SignatureFileError {
 public:
  DuplicateSignature(std::size_t line, const std::string& signature)
      : SignatureFileError(line, "duplicate signature '" + signature + "'"),
        signature_(signature) {}
  const std::string& signature() const { return signature_; }

 private:
  std::string signature_;
};

class MissingSectionHeader : public SignatureFileError {
 public:
  explicit MissingSectionHeader(std::size_t line)
      : SignatureFileError(line,
                           "signature before any [api] or [intent] header") {}
};

}  // namespace droidbench

#endif  // DROIDBENCH_ERROR_HPP
