#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rootdatum/root_datum.hpp"

namespace rootdatum::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // invalid datum, not isomorphic
  kInputError = 2,
  kCapExceeded = 3,
};

struct Environment {
  unsigned precision = kDefaultPrecision;
  std::size_t cap = kDefaultClosureCap;
};

/// From ROOTDATUM_PRECISION and ROOTDATUM_CAP (either may be null).
/// Throws ParseError on a malformed value.
Environment environment_from(const char* precision, const char* cap);
Environment environment_from_process();

/// A readable file in the datum format, else a catalog key.
RootDatum resolve(const std::string& name, const Environment& env);

int cmd_validate(const std::string& name, const Environment& env, std::ostream& out, std::ostream& err);
int cmd_info(const std::string& name, bool json, const Environment& env, std::ostream& out, std::ostream& err);
int cmd_iso(const std::string& a, const std::string& b, const Environment& env, std::ostream& out, std::ostream& err);
int cmd_decompose(const std::string& name, const Environment& env, std::ostream& out, std::ostream& err);
int cmd_catalog_list(std::ostream& out);
/// `path` "-" writes to `out`.
int cmd_export(const std::string& key, const std::string& path, const Environment& env, std::ostream& out,
               std::ostream& err);

/// Full command line without the program name.
int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err);

}  // namespace rootdatum::cli
