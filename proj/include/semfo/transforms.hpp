#pragma once

#include "semfo/formula.hpp"

namespace semfo {

/// Negation normal form of ~f: dualizes connectives, quantifiers, literals and
/// variable (in)equalities. Comparisons are eliminated first.
Formula nnf_negate(const Formula& f);

/// Rewrites every comparison into an equivalent comparison-free formula; the
/// result agrees with the input on every Boolean interpretation.
Formula eliminate_comparisons_boolean(const Formula& f);

}  // namespace semfo
