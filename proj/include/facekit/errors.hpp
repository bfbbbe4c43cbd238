// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_ERRORS_HPP
#define FACEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace facekit {

/// File content could not be parsed. The message names the offending line.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parsed content violates a domain invariant (duplicate ids, bad boxes, ...).
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace facekit

#endif  // FACEKIT_ERRORS_HPP
