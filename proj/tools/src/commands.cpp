#include "rootdatum_cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rootdatum/catalog.hpp"
#include "rootdatum/decompose.hpp"
#include "rootdatum/errors.hpp"
#include "rootdatum/isomorphism.hpp"
#include "rootdatum/molien.hpp"
#include "rootdatum_cli/datum_file.hpp"

namespace rootdatum::cli {
namespace {

std::size_t parse_positive(const char* text, const char* var) {
  std::string s(text);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-' || v < 1)
    throw ParseError(std::string(var) + " must be a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

// Maps library errors to the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    err << "error: closure cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const OrderCapExceeded& e) {
    err << "error: order cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PrecisionLoss& e) {
    err << "error: precision loss: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

std::string degrees_text(const std::vector<unsigned>& d) {
  std::string s;
  for (unsigned x : d) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

void print_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
    out << '\n';
  }
}

// Validation is a precondition of info, iso and decompose.
bool require_valid(const RootDatum& d, const std::string& name, std::ostream& err) {
  ValidationReport rep = validate(d);
  if (rep.passed()) return true;
  err << name << " is not a valid root datum\n" << rep.str();
  return false;
}

}  // namespace

Environment environment_from(const char* precision, const char* cap) {
  Environment env;
  if (precision) {
    std::size_t k = parse_positive(precision, "ROOTDATUM_PRECISION");
    if (k > 100000) throw ParseError("ROOTDATUM_PRECISION is out of range");
    env.precision = static_cast<unsigned>(k);
  }
  if (cap) env.cap = parse_positive(cap, "ROOTDATUM_CAP");
  return env;
}

Environment environment_from_process() {
  return environment_from(std::getenv("ROOTDATUM_PRECISION"), std::getenv("ROOTDATUM_CAP"));
}

RootDatum resolve(const std::string& name, const Environment& env) {
  std::error_code ec;
  RootDatum d = [&] {
    if (std::filesystem::is_regular_file(name, ec)) {
      std::ifstream in(name, std::ios::binary);
      if (!in) throw ParseError("cannot read " + name);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        return parse_datum(buf.str(), env.precision).with_label(name);
      } catch (const ParseError& e) {
        throw ParseError(name + ": " + e.what());
      }
    }
    try {
      return catalog_datum(name, env.precision);
    } catch (const BadKey& e) {
      throw ParseError("cannot resolve '" + name + "': no such file, and not a catalog key (" + e.what() + ")");
    }
  }();
  if (d.closure_cap() != env.cap) d = d.with_closure_cap(env.cap);
  return d;
}

int cmd_validate(const std::string& name, const Environment& env, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RootDatum d = resolve(name, env);
    ValidationReport rep = validate(d);
    out << rep.str();
    return rep.passed() ? kSuccess : kNegative;
  });
}

int cmd_info(const std::string& name, bool json, const Environment& env, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RootDatum d = resolve(name, env);
    if (!require_valid(d, name, err)) return int(kNegative);
    std::optional<std::size_t> order;
    std::optional<std::vector<unsigned>> degrees;
    if (!d.reflection_local()) {
      const MatrixGroup& w = d.weyl_group();
      order = w.order();  // CapExceeded past the cap
      degrees = molien_degrees(w);
    }
    const std::size_t nrefl = d.reflections().size();
    const std::string pi1 = fundamental_group(d).str();
    const std::string z = center(d).str();
    const std::string label = d.label().empty() ? name : d.label();
    if (json) {
      nlohmann::ordered_json j;
      j["name"] = label;
      j["ring"] = d.ring().name();
      j["rank"] = d.rank();
      if (order)
        j["order"] = *order;
      else
        j["order"] = "reflection-local";
      j["reflections"] = nrefl;
      if (degrees)
        j["degrees"] = *degrees;
      else
        j["degrees"] = nullptr;
      j["pi1"] = pi1;
      j["center"] = z;
      out << j.dump(2) << '\n';
    } else {
      out << "name        " << label << '\n';
      out << "ring        " << d.ring().name() << '\n';
      out << "rank        " << d.rank() << '\n';
      out << "order       " << (order ? std::to_string(*order) : "reflection-local") << '\n';
      out << "reflections " << nrefl << '\n';
      out << "degrees     " << (degrees ? degrees_text(*degrees) : "-") << '\n';
      out << "pi1         " << pi1 << '\n';
      out << "center      " << z << '\n';
    }
    return int(kSuccess);
  });
}

namespace {

// Over Z_p, search again at 2k; the new witness must also be one at k.
// Files that fix their own precision cannot be raised and are checked at k only.
bool reverified_at_double(const std::string& a, const std::string& b, const RootDatum& da, const Matrix& witness,
                          const Environment& env) {
  if (!witness.ring().is_padic()) return true;
  Environment wide = env;
  wide.precision = 2 * env.precision;
  RootDatum wa = resolve(a, wide), wb = resolve(b, wide);
  if (wa.ring().precision() <= da.ring().precision()) return true;
  IsoResult res = find_isomorphism(wa, wb);
  if (res.status != IsoStatus::Found || !is_isomorphism(wa, wb, *res.witness)) return false;
  if (res.witness->ring().precision() < witness.ring().precision()) return true;
  return is_isomorphism(da, resolve(b, env), res.witness->to_ring(witness.ring()));
}

}  // namespace

int cmd_iso(const std::string& a, const std::string& b, const Environment& env, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RootDatum da = resolve(a, env);
    RootDatum db = resolve(b, env);
    if (!require_valid(da, a, err) || !require_valid(db, b, err)) return int(kInputError);
    IsoResult res = find_isomorphism(da, db);
    if (res.status == IsoStatus::Found) {
      if (!is_isomorphism(da, db, *res.witness) || !reverified_at_double(a, b, da, *res.witness, env)) {
        err << "error: witness failed re-verification\n";
        return int(kNegative);
      }
      out << "isomorphic\n";
      out << "witness over " << res.witness->ring().name() << '\n';
      print_matrix(out, *res.witness);
      return int(kSuccess);
    }
    out << "not isomorphic\n";
    if (res.status == IsoStatus::Invariant)
      out << "certificate: " << res.reason << '\n';
    else
      out << res.reason << '\n';
    return int(kNegative);
  });
}

int cmd_decompose(const std::string& name, const Environment& env, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RootDatum d = resolve(name, env);
    if (!require_valid(d, name, err)) return int(kNegative);
    Decomposition dec;
    try {
      dec = decompose(d);
    } catch (const Inconsistent& e) {
      err << "error: " << e.what() << '\n';
      return int(kNegative);
    }
    if (!dec.splits) {
      out << "does not split\nrational ranks";
      for (std::size_t r : dec.rational_ranks) out << ' ' << r;
      out << '\n';
      return int(kSuccess);
    }
    std::vector<std::string> names;
    for (const auto& f : dec.factors) names.push_back(identify(f.datum).value_or("unrecognized factor"));
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : " × ") + n;
    out << joined << '\n';
    for (std::size_t i = 0; i < dec.factors.size(); ++i)
      out << "factor " << i + 1 << ": " << names[i] << " (rank " << dec.factors[i].datum.rank() << ")\n";
    return int(kSuccess);
  });
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& k : catalog_keys()) out << k << '\n';
  return kSuccess;
}

int cmd_export(const std::string& key, const std::string& path, const Environment& env, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    RootDatum d = resolve(key, env);
    const std::string text = serialize_datum(d);
    if (path == "-") {
      out << text;
      return int(kSuccess);
    }
    std::ofstream f(path, std::ios::binary);
    if (!(f << text) || !f.flush()) {
      err << "error: cannot write " << path << '\n';
      return int(kInputError);
    }
    return int(kSuccess);
  });
}

int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root data over Z and Z_p", "rootdatum"};
  app.require_subcommand(1);
  std::string a, b;
  bool json = false;

  auto* validate_cmd = app.add_subcommand("validate", "check the root datum axioms");
  validate_cmd->add_option("datum", a, "datum file or catalog key")->required();
  auto* info_cmd = app.add_subcommand("info", "print invariants");
  info_cmd->add_option("datum", a, "datum file or catalog key")->required();
  info_cmd->add_flag("--json", json, "machine-readable output");
  auto* iso_cmd = app.add_subcommand("iso", "decide isomorphism");
  iso_cmd->add_option("a", a, "first datum")->required();
  iso_cmd->add_option("b", b, "second datum")->required();
  auto* decompose_cmd = app.add_subcommand("decompose", "split into simple factors and a torus");
  decompose_cmd->add_option("datum", a, "datum file or catalog key")->required();
  auto* catalog_cmd = app.add_subcommand("catalog", "catalog queries");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog keys");
  auto* export_cmd = app.add_subcommand("export", "write a catalog entry in the datum format");
  export_cmd->add_option("key", a, "catalog key")->required();
  export_cmd->add_option("file", b, "output path, - for stdout")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  if (validate_cmd->parsed()) return cmd_validate(a, env, out, err);
  if (info_cmd->parsed()) return cmd_info(a, json, env, out, err);
  if (iso_cmd->parsed()) return cmd_iso(a, b, env, out, err);
  if (decompose_cmd->parsed()) return cmd_decompose(a, env, out, err);
  if (list_cmd->parsed()) return cmd_catalog_list(out);
  if (export_cmd->parsed()) return cmd_export(a, b, env, out, err);
  return kInputError;
}

}  // namespace rootdatum::cli
