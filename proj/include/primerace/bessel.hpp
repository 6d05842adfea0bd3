#pragma once

namespace primerace {

// J0(x), absolute error below 1e-12 for all finite x.  Satisfies the
// envelope |J0(x)| <= min(1, sqrt(2/(pi*|x|))).
double bessel_j0(double x);

// First positive root of J0, to full double precision.
double bessel_j0_first_root();

}  // namespace primerace
