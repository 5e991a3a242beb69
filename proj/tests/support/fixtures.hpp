#ifndef EQLOGIC_TESTS_FIXTURES_HPP
#define EQLOGIC_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "eqlogic/eqlogic.hpp"

#ifndef EQLOGIC_DATA_DIR
#error "EQLOGIC_DATA_DIR must point at the bundled data directory"
#endif
#ifndef EQLOGIC_TEST_DATA_DIR
#error "EQLOGIC_TEST_DATA_DIR must point at tests/data"
#endif

namespace eqlogic::testing {

inline std::string data_path(const std::string& name) { return std::string(EQLOGIC_DATA_DIR) + "/" + name; }
inline std::string test_data_path(const std::string& name) { return std::string(EQLOGIC_TEST_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Theory load_theory(const std::string& name) { return frontend::parse_theory(read_text(data_path(name))); }

inline Model load_model(const std::string& name, const Signature& sig) {
  return frontend::parse_model(read_text(data_path(name)), sig);
}

inline Term V(const std::string& x) { return Term::var(x); }
inline Term A(const std::string& op, std::vector<Term> args = {}) { return Term::app(op, std::move(args)); }

inline Signature monoid_signature() {
  return validate_signature({{"M"}, {{"plus", {"M", "M"}, "M"}, {"e", {}, "M"}}});
}

/// The monoid theory, built directly rather than parsed.
inline Theory monoid_theory() {
  Signature sig = monoid_signature();
  Theory th{sig, {}};
  Context xyz{{"x", "M"}, {"y", "M"}, {"z", "M"}};
  Context x{{"x", "M"}};
  th.equations.emplace("assoc", make_equation(sig, xyz, A("plus", {A("plus", {V("x"), V("y")}), V("z")}),
                                              A("plus", {V("x"), A("plus", {V("y"), V("z")})})));
  th.equations.emplace("unitL", make_equation(sig, x, A("plus", {A("e"), V("x")}), V("x")));
  th.equations.emplace("unitR", make_equation(sig, x, A("plus", {V("x"), A("e")}), V("x")));
  return th;
}

/// Z/2 under exclusive or, built directly.
inline Model z2_model() {
  RawModel raw;
  raw.carriers["M"] = {"0", "1"};
  raw.tables["plus"] = {{{"0", "0"}, "0"}, {{"0", "1"}, "1"}, {{"1", "0"}, "1"}, {{"1", "1"}, "0"}};
  raw.tables["e"] = {{{}, "0"}};
  return validate_model(monoid_signature(), raw);
}

}  // namespace eqlogic::testing

#endif  // EQLOGIC_TESTS_FIXTURES_HPP
