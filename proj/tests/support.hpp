#pragma once

#include "exseq/exseq.hpp"

#include <ostream>
#include <random>
#include <vector>

namespace exseq {

inline void PrintTo(const NumClass& N, std::ostream* os) {
    *os << "(" << N.e << ", [";
    for (std::size_t i = 0; i < N.c1.size(); ++i) *os << (i ? ", " : "") << N.c1[i];
    *os << "], " << N.c2 << ")";
}

inline void PrintTo(const V2& v, std::ostream* os) { *os << to_string(v); }

}  // namespace exseq

namespace exseq::testing {

inline NumClass line_bundle(const DivisorClass& D) { return {1, D, 0}; }

inline DivisorClass divisor(std::initializer_list<long> coords) {
    DivisorClass d(coords.size());
    std::size_t i = 0;
    for (long c : coords) d[i++] = Int(c);
    return d;
}

// The four-member sequence of the blow-up of P^2 in one point with a leading rank-zero member.
inline IntersectionLattice blowup_one() { return make_blowup_p2(1); }

inline Sequence torsion_example() {
    return {{0, divisor({0, 1}), 0}, {2, divisor({3, 0}), 3}, {1, divisor({2, 0}), 0}, {1, divisor({4, 0}), 0}};
}

inline Sequence p2_line_bundles() {
    return {line_bundle(divisor({0})), line_bundle(divisor({1})), line_bundle(divisor({2}))};
}

// Tangent bundle, O(2), O(4) on P^2.
inline Sequence p2_markov() { return {{2, divisor({3}), 3}, line_bundle(divisor({2})), line_bundle(divisor({4}))}; }

// O, O(P), O(Q), O(P + Q) on a Hirzebruch surface in the (P, Q) basis.
inline Sequence hirzebruch_line_bundles() {
    return {line_bundle(divisor({0, 0})), line_bundle(divisor({1, 0})), line_bundle(divisor({0, 1})),
            line_bundle(divisor({1, 1}))};
}

// O, O(E_1), ..., O(E_k), O(H), O(2H) on the blow-up of P^2 in k points.
inline Sequence blowup_line_bundles(const IntersectionLattice& L) {
    Sequence s{line_bundle(L.zero())};
    for (int i = 1; i < L.rho; ++i) s.push_back(line_bundle(L.unit(i)));
    s.push_back(line_bundle(L.unit(0)));
    s.push_back(line_bundle(2 * L.unit(0)));
    return s;
}

// Rank-zero members on each exceptional curve followed by O, O(H), O(2H).
inline Sequence blowup_with_torsion(const IntersectionLattice& L) {
    Sequence s;
    for (int i = 1; i < L.rho; ++i) s.push_back({0, L.unit(i), 0});
    s.push_back(line_bundle(L.zero()));
    s.push_back(line_bundle(L.unit(0)));
    s.push_back(line_bundle(2 * L.unit(0)));
    return s;
}

inline Sequence scramble(const IntersectionLattice& L, Sequence s, std::size_t steps, std::mt19937_64& rng) {
    for (std::size_t k = 0; k < steps; ++k) s = apply_step(L, s, random_step(rng, s.size()));
    return s;
}

inline Sequence ranks_positive(const IntersectionLattice& L, Sequence s) {
    for (auto& E : s)
        if (E.e < 0) E = shift(L, E);
    return s;
}

inline std::vector<Int> ranks_of(const Sequence& s) {
    std::vector<Int> r;
    for (const auto& E : s) r.push_back(E.e);
    return r;
}

}  // namespace exseq::testing
