#pragma once

#include "opcalc/operads.hpp"

namespace opcalc {

// The n-Poisson operad (n >= 2): underlying symmetric sequence of the
// composite of the symmetric-algebra and (n-1)-fold-shifted Lie sequences,
// with the biderivation composition. Component k carries internal grading
// (n-1) * (k - #blocks); koszul signs throughout.
Operad poisson_operad(int n, int max_arity);

}  // namespace opcalc
