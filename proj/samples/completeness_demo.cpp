// Checks a small proof, replays it through the term model, and prints the
// rebuilt derivation together with its size.

#include <iostream>

#include "eqlogic/eqlogic.hpp"

using namespace eqlogic;

int main() {
  Theory th = frontend::parse_theory(
      "sort L\n"
      "op meet : L L -> L\n"
      "eq assoc [x,y,z:L] : meet(meet(x,y),z) = meet(x,meet(y,z))\n"
      "eq comm [x,y:L] : meet(x,y) = meet(y,x)\n"
      "eq idem [x:L] : meet(x,x) = x\n");
  frontend::ProofScript p = frontend::parse_proof(
      "prove [x:L, y:L] : meet(meet(x,y),y) = meet(x,y)\n"
      "(trans (sub (hyp assoc) ((x := x) (y := y) (z := y)))\n"
      "       (app meet (base x) (sub (hyp idem) ((x := y)))))\n",
      th);

  Judgment j = frontend::check_proof(th, p);
  std::cout << "checked: " << to_string(j) << "\n";

  Derivation evidence = term_model_evidence(th, p.derivation, j.context);
  Derivation rebuilt = completeness(th, j.as_equation(), evidence);
  std::cout << "rebuilt (" << derivation_size(rebuilt) << " nodes): " << to_string(check_derivation(th, rebuilt, j.context))
            << "\n";
  std::cout << frontend::print_derivation(rebuilt) << "\n";
  return 0;
}
