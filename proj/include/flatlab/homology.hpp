#pragma once

#include "flatlab/first_return.hpp"
#include "flatlab/intlinalg.hpp"

#include <optional>
#include <vector>

namespace flatlab {

// Primal edge chain of a loop given by crossings: each crossing is slid to
// the start vertex of the crossed edge and consecutive vertices are joined
// inside the triangle between them.
IntVec loop_chain(const Triangulation& t, const CrossingLoop& loop);
// Signed crossing counts per edge (the loop viewed as a cochain).
IntVec loop_cochain(const Triangulation& t, const CrossingLoop& loop);
// Sum of edge vectors along a chain.
Vec2 chain_holonomy(const Triangulation& t, const IntVec& chain);

// Homology of a surface presented by a first-return map. Cycle coordinates
// are taken in a symplectic basis a_1..a_g, b_1..b_g with <a_i, b_i> = 1;
// horizontal then vertical core curves of a torus pair to +1.
class CycleModel {
public:
    CycleModel(const TranslationSurface& s, const Transversal& X);
    explicit CycleModel(FirstReturn fr);

    const FirstReturn& first_return() const { return fr_; }
    int genus() const { return genus_; }
    int size() const { return static_cast<int>(fr_.loops.size()); }

    // Intersection matrix of the first-return loops.
    const std::vector<IntVec>& omega() const { return omega_; }
    // Coefficients of the symplectic basis cycles in terms of the loops.
    const std::vector<IntVec>& basis() const { return basis_; }
    // c(X_j) in symplectic coordinates.
    const std::vector<IntVec>& cycles() const { return cycles_; }
    const std::vector<IntVec>& chains() const { return chains_; }
    const std::vector<IntVec>& cochains() const { return cochains_; }
    // Periods of the basis cycles (raw units).
    const std::vector<Vec2>& basis_periods() const { return basis_periods_; }

    // Intersection numbers with the first-return loops; defined for absolute
    // and relative chains alike.
    IntVec intersections(const IntVec& chain) const;
    // Class of a closed primal chain in symplectic coordinates.
    IntVec coordinates(const IntVec& chain) const;

private:
    void build();

    FirstReturn fr_;
    int genus_ = 0;
    std::vector<IntVec> chains_, cochains_, omega_, basis_, cycles_;
    std::vector<IntVec> basis_pairings_;   // <basis_i, c_k>
    std::vector<Vec2> basis_periods_;
};

// Standard symplectic pairing of coordinate vectors.
BigInt intersection(const IntVec& a, const IntVec& b);
// Gram matrix of a list of coordinate vectors.
std::vector<IntVec> gram_matrix(const std::vector<IntVec>& v);

std::vector<IntVec> first_return_cycles(const TranslationSurface& s, const Transversal& X);

struct ErgodicSum {
    IntVec cycle;                 // c_N in symplectic coordinates
    std::vector<BigInt> visits;   // per label
    Rational end_point;           // T^N(x0)
};

// c_N(x0) = c(x0) + ... + c(T^{N-1} x0); throws SeparatrixHit when the orbit
// meets an endpoint of the exchanged intervals.
ErgodicSum ergodic_cycle(const CycleModel& m, const Rational& x0, long N);
// Same with checkpoints: returns c_n for every n in checkpoints (increasing).
std::vector<IntVec> ergodic_checkpoints(const CycleModel& m, const Rational& x0,
                                        const std::vector<long>& checkpoints);

// |X| c_N / N.
std::vector<double> asymptotic_cycle(const CycleModel& m, long N, std::optional<Rational> x0 = {});
// c with <gamma, c> = Re of the period of gamma for every basis cycle gamma.
RatVec dual_of_re_omega(const CycleModel& m);

// A generic starting point on X (odd numerator over a large denominator).
Rational generic_point(const CycleModel& m, int k = 0);

}  // namespace flatlab
