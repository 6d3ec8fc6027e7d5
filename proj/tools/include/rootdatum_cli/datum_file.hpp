#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rootdatum/root_datum.hpp"

namespace rootdatum::cli {

/// Raised for malformed input; the message names the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-oriented text form:
///
///   rootdatum 1
///   ring Z2 64          (or "ring Z"; a missing precision means the default)
///   rank 3
///   mode reflection-local   (optional)
///   gen
///   <r rows of r integers>
///   ...
///   coroot <gen-index> <r integers> scale <p^m | integer>
///
/// Blank lines and lines starting with '#' are ignored.
RootDatum parse_datum(std::string_view text, unsigned default_precision = kDefaultPrecision);

/// Canonical form: p-adic entries in [0, p^k), primitive coroot vectors
/// in the canonical normalisation, scales written p^m over Z_p.
std::string serialize_datum(const RootDatum& d);

}  // namespace rootdatum::cli
