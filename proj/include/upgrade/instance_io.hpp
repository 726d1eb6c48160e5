#pragma once

#include <stdexcept>
#include <string>

#include "upgrade/instance.hpp"

namespace upgrade::io {

/// Parse failure with a machine-greppable code: "syntax" (malformed
/// document, position-addressed), "schema" (missing or mistyped field,
/// field-addressed), or "semantic" (a model invariant is violated,
/// field-addressed).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Parses and validates an instance document (UTF-8 JSON). The sugar form
/// {"count": m, "spacing": "equidistant"} for overhauls expands to
/// i * H / (m+1).
Instance parse_instance(const std::string& text);

/// Canonical serialization; parse(serialize(parse(text))) yields the same
/// document byte for byte.
std::string serialize_instance(const Instance& instance);

}  // namespace upgrade::io
