#ifndef EQLOGIC_EQLOGIC_HPP
#define EQLOGIC_EQLOGIC_HPP

#include "eqlogic/birkhoff.hpp"
#include "eqlogic/calculus.hpp"
#include "eqlogic/countermodel.hpp"
#include "eqlogic/error.hpp"
#include "eqlogic/frontend/parser.hpp"
#include "eqlogic/frontend/printer.hpp"
#include "eqlogic/model.hpp"
#include "eqlogic/signature.hpp"
#include "eqlogic/term.hpp"
#include "eqlogic/theory.hpp"

#endif  // EQLOGIC_EQLOGIC_HPP
