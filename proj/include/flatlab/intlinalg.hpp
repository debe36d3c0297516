#pragma once

#include "flatlab/numeric.hpp"

#include <vector>

namespace flatlab {

using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rational>;

BigInt dot(const IntVec& a, const IntVec& b);

// Z-basis of the lattice spanned by the given vectors (row reduction).
std::vector<IntVec> lattice_basis(std::vector<IntVec> vectors);

// Rank over Q.
int rank_of(const std::vector<IntVec>& vectors);

// Solves sum_i x_i rows[i] = target exactly; throws SingularIntersectionForm
// when no solution exists.
RatVec solve_combination(const std::vector<IntVec>& rows, const IntVec& target);
RatVec solve_combination(const std::vector<RatVec>& rows, const RatVec& target);

// Antisymmetric unimodular Gram matrix G (row-major, size 2g). Returns 2g
// vectors u_1..u_2g (coordinates in the input basis) with
// <u_i, u_{g+i}> = 1 and all other pairings zero for i < j ordering.
std::vector<IntVec> symplectic_reduction(const std::vector<IntVec>& gram);

BigInt pairing(const std::vector<IntVec>& gram, const IntVec& a, const IntVec& b);

}  // namespace flatlab
