// Copyright 2026 The HDR-FUNQUE Authors. All Rights Reserved.
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

#ifndef FUNQUE_ERRORS_H_
#define FUNQUE_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace funque {

// Base class for every error raised by the library. Input and usage problems
// derive from Error directly; NumericError marks internal numeric failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, uint64_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  uint64_t byte_offset() const { return byte_offset_; }

 private:
  uint64_t byte_offset_;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  explicit TruncationError(int64_t frame_index)
      : Error("truncated payload in frame " + std::to_string(frame_index)),
        frame_index_(frame_index) {}
  int64_t frame_index() const { return frame_index_; }

 private:
  int64_t frame_index_;
};

class GeometryError : public Error {
 public:
  GeometryError(uint64_t expected_multiple, uint64_t actual_bytes)
      : Error("file size " + std::to_string(actual_bytes) +
              " bytes is not a multiple of the frame size " +
              std::to_string(expected_multiple) + " bytes"),
        expected_(expected_multiple),
        actual_(actual_bytes) {}
  uint64_t expected_frame_bytes() const { return expected_; }
  uint64_t actual_bytes() const { return actual_; }

 private:
  uint64_t expected_;
  uint64_t actual_;
};

class LengthMismatchError : public Error {
 public:
  // `shorter` names the stream that ended first ("reference" or "test").
  LengthMismatchError(const std::string& shorter, int64_t frames_read)
      : Error(shorter + " stream ended after " + std::to_string(frames_read) +
              " frames while the other stream continues"),
        shorter_(shorter) {}
  const std::string& shorter() const { return shorter_; }

 private:
  std::string shorter_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TooSmallError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class RegistryError : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public NumericError {
 public:
  using NumericError::NumericError;
};

class VersionMismatchError : public Error {
 public:
  VersionMismatchError(int found, int expected)
      : Error("model file version " + std::to_string(found) +
              " does not match supported version " + std::to_string(expected)) {}
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

}  // namespace funque

#endif  // FUNQUE_ERRORS_H_
