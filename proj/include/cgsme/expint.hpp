// expint.hpp — exponential integral Ei on the principal branch

#pragma once

#include <complex>

namespace cgsme {

// Ei(z) with branch points at 0 and ∞ and the cut along (-∞, 0].
// On the cut the principal-value real part is returned with the imaginary
// part taken as the limit from above (+iπ). For real z > 0 this is the
// classical exponential integral.
//
// Throws DomainError for z = 0 (or non-finite z) and OverflowError once
// e^z/z no longer fits in a double (Re z > ~705).
std::complex<double> expint_ei(std::complex<double> z);

} // namespace cgsme
