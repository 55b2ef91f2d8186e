#pragma once

#include <vector>

#include "entroscope/intpoly.hpp"
#include "entroscope/value.hpp"

namespace entroscope {

/// Logarithmic Mahler measure: log|lc(p)| + sum of log|lambda| over the roots
/// outside the unit circle. The integer content is part of the leading
/// coefficient, so a constant c gives log|c|. Factors t and cyclotomic
/// factors are removed exactly before any root is approximated; products of
/// linear factors give an exact `log m` value.
///
/// Throws DomainError on the zero polynomial, NumericalError if the roots
/// cannot be certified within the precision cap.
EntropyValue mahler(const IntPoly& p, double abs_err = 1e-9);

/// A disc guaranteed to contain exactly one root.
struct RootDisc {
  double re = 0;
  double im = 0;
  double radius = 0;
};

/// Certified isolating discs for the roots of a squarefree polynomial of
/// degree >= 1, refined until every radius is below `max_radius`.
std::vector<RootDisc> isolate_roots(const IntPoly& squarefree, double max_radius = 1e-12);

}  // namespace entroscope
