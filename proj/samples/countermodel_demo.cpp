// Builds the monoid theory in code, asks whether plus is commutative, and
// prints the smallest model that says no.

#include <iostream>

#include "eqlogic/eqlogic.hpp"

using namespace eqlogic;

int main() {
  Theory th = frontend::parse_theory(
      "sort M\n"
      "op plus : M M -> M\n"
      "op e : -> M\n"
      "eq assoc [x,y,z:M] : plus(plus(x,y),z) = plus(x,plus(y,z))\n"
      "eq unitL [x:M] : plus(e,x) = x\n"
      "eq unitR [x:M] : plus(x,e) = x\n");
  Equation comm = frontend::parse_equation("[x,y:M] plus(x,y) = plus(y,x)", th.signature);

  for (std::size_t n = 1; n <= 3; ++n) {
    auto found = search_countermodel(th, comm, {n});
    if (!found) {
      std::cout << "no countermodel with carriers of size <= " << n << "\n";
      continue;
    }
    std::cout << frontend::print_model(found->model);
    std::cout << "# refutes commutativity at " << to_string(found->model, found->witness) << "\n";
    return 0;
  }
  return 1;
}
