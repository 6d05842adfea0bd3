#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace primerace {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  // rows

// LLL reduction (delta = 0.99) of the lattice generated by the rows of
// basis, in place.  Row operations are exact; Gram-Schmidt runs in GMP
// floats sized to the entries.  Serialized internally (one reduction at a
// time) because GMP float precision is process-global.
void lll_reduce(ZMat& basis);

// Primitive basis (rows) of the integer kernel {x in Z^n : M x = 0} of the
// matrix with the given rows, via unimodular column elimination.  The kernel
// of an integer matrix is saturated, so the result generates a subtorus.
ZMat integer_kernel(const ZMat& m, std::size_t ncols);

// Saturation of the row span: (ker (ker M))^T, as rows.
ZMat saturate_rows(const ZMat& m, std::size_t ncols);

std::size_t integer_rank(ZMat m);

// |det| of a square integer matrix (fraction-free Bareiss elimination).
mpz_class determinant_abs(ZMat m);

// Indices of a maximal Q-independent subset of rows, greedy in order.
std::vector<std::size_t> independent_subset(const ZMat& rows);

}  // namespace primerace
