#pragma once

#include "exseq/numclass.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace exseq {

enum class Direction { left, right };

inline const char* to_string(Direction d) { return d == Direction::left ? "left" : "right"; }

// Mutation of the adjacent members at positions (position, position + 1), zero-based.
struct MutationStep {
    std::size_t position = 0;
    Direction direction = Direction::right;

    friend bool operator==(const MutationStep& a, const MutationStep& b) {
        return a.position == b.position && a.direction == b.direction;
    }
};

// Left: (E, F) -> (L_E F, E) with [L_E F] = chi(E,F)[E] - [F].
// Right: (E, F) -> (F, R_F E) with [R_F E] = chi(E,F)[F] - [E].
inline std::pair<NumClass, NumClass> mutate_pair(const IntersectionLattice& L, const NumClass& E, const NumClass& F,
                                                 Direction dir) {
    if (!is_num_exceptional(L, E) || !is_num_exceptional(L, F) || euler(L, F, E) != 0)
        throw DomainError("mutation needs a numerically exceptional pair");
    const Int chi = euler(L, E, F);
    const ChernCharacter ce = chern_character(L, E), cf = chern_character(L, F);
    if (dir == Direction::left) return {from_chern(L, chi * ce - cf), E};
    return {F, from_chern(L, chi * cf - ce)};
}

// Explicit Chern class formulas for the left mutation; agrees with mutate_pair.
inline NumClass left_mutation_by_formula(const IntersectionLattice& L, const NumClass& E, const NumClass& F) {
    const Int chi = euler(L, E, F);
    const Int binom = chi * (chi - 1) / 2;
    return {chi * E.e - F.e, chi * E.c1 - F.c1,
            binom * pair(L, E.c1, E.c1) - chi * pair(L, E.c1, F.c1) + pair(L, F.c1, F.c1) + chi * E.c2 - F.c2};
}

inline Sequence apply_step(const IntersectionLattice& L, const Sequence& seq, const MutationStep& step) {
    if (step.position + 1 >= seq.size()) throw DomainError("mutation position out of range");
    Sequence out = seq;
    auto [a, b] = mutate_pair(L, seq[step.position], seq[step.position + 1], step.direction);
    out[step.position] = std::move(a);
    out[step.position + 1] = std::move(b);
    return out;
}

inline Sequence mutate_seq(const IntersectionLattice& L, const Sequence& seq, const MutationStep& step) {
    if (!validate_sequence(L, seq).ok()) throw DomainError("mutate_seq needs a valid sequence");
    Sequence out = apply_step(L, seq, step);
    const auto diag = validate_sequence(L, out);
    if (!diag.ok()) throw std::logic_error("mutation produced an invalid sequence");
    return out;
}

inline Sequence replay(const IntersectionLattice& L, Sequence seq, const std::vector<MutationStep>& steps) {
    for (const auto& s : steps) seq = apply_step(L, seq, s);
    return seq;
}

namespace detail {

// Elements p + q*alpha of Z[alpha]/(alpha^2 - chi*alpha + 1).
struct QuadInt {
    Int p, q;
};

inline QuadInt mul(const QuadInt& a, const QuadInt& b, const Int& chi) {
    // alpha^2 = chi*alpha - 1
    const Int qq = a.q * b.q;
    return {a.p * b.p - qq, a.p * b.q + a.q * b.p + chi * qq};
}

inline QuadInt power(QuadInt base, unsigned long k, const Int& chi) {
    QuadInt r{1, 0};
    while (k != 0) {
        if (k & 1UL) r = mul(r, base, chi);
        base = mul(base, base, chi);
        k >>= 1UL;
    }
    return r;
}

inline Int signed_power(const Int& b, unsigned long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
    return r;
}

}  // namespace detail

// Coefficient of alpha in alpha^i, i.e. (alpha_+^i - alpha_-^i)/(alpha_+ - alpha_-).
inline Int chebyshev_u(const Int& chi, unsigned long i) { return detail::power({0, 1}, i, chi).q; }

// Rank e_i of the sequence e_{i+2} = chi*e_{i+1} - e_i, evaluated in closed form.
inline Int rank_recurrence(const Int& e0, const Int& e1, const Int& chi, unsigned long i) {
    const Int c2 = chi * chi;
    if (c2 > 4) return chebyshev_u(chi, i + 1) * e0 - chebyshev_u(chi, i) * (chi * e0 - e1);
    if (chi == 0) {
        const Int s = ((i / 2) % 2 == 0) ? 1 : -1;
        return s * (i % 2 == 0 ? e0 : e1);
    }
    if (c2 == 1) {
        const Int m = -chi;
        switch (i % 3) {
            case 0: return detail::signed_power(m, i / 3) * e0;
            case 1: return detail::signed_power(m, (i - 1) / 3) * e1;
            default: return detail::signed_power(m, (i - 2) / 3) * (chi * e1 - e0);
        }
    }
    const Int ii = static_cast<unsigned long>(i);
    if (chi == 2) return ii * e1 + e0 * (1 - ii);
    const Int s = (i % 2 == 0) ? -1 : 1;
    return s * (ii * e1 - e0 * (1 - ii));
}

struct BraidReport {
    std::size_t checked_inverse = 0;
    std::size_t checked_braid = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Checks L_i R_i = R_i L_i = id and R_i R_{i+1} R_i = R_{i+1} R_i R_{i+1} on seq.
inline BraidReport verify_braid(const IntersectionLattice& L, const Sequence& seq) {
    BraidReport r;
    const std::size_t n = seq.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const MutationStep R{i, Direction::right}, Lf{i, Direction::left};
        if (apply_step(L, apply_step(L, seq, R), Lf) != seq)
            r.failures.push_back("L_" + std::to_string(i + 1) + " R_" + std::to_string(i + 1) + " != id");
        if (apply_step(L, apply_step(L, seq, Lf), R) != seq)
            r.failures.push_back("R_" + std::to_string(i + 1) + " L_" + std::to_string(i + 1) + " != id");
        ++r.checked_inverse;
        if (i + 2 < n) {
            const MutationStep R2{i + 1, Direction::right};
            Sequence a = apply_step(L, apply_step(L, apply_step(L, seq, R), R2), R);
            Sequence b = apply_step(L, apply_step(L, apply_step(L, seq, R2), R), R2);
            if (a != b) r.failures.push_back("braid relation fails at " + std::to_string(i + 1));
            ++r.checked_braid;
        }
    }
    return r;
}

inline MutationStep random_step(std::mt19937_64& rng, std::size_t length) {
    std::uniform_int_distribution<std::size_t> pos(0, length - 2);
    std::bernoulli_distribution dir(0.5);
    return {pos(rng), dir(rng) ? Direction::left : Direction::right};
}

// Walks a random mutation orbit and checks the braid identities at every node.
inline BraidReport verify_braid(const IntersectionLattice& L, Sequence seq, std::size_t trials,
                                std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    BraidReport total;
    for (std::size_t k = 0; k <= trials; ++k) {
        BraidReport r = verify_braid(L, seq);
        total.checked_inverse += r.checked_inverse;
        total.checked_braid += r.checked_braid;
        total.failures.insert(total.failures.end(), r.failures.begin(), r.failures.end());
        if (k < trials) seq = mutate_seq(L, seq, random_step(rng, seq.size()));
    }
    return total;
}

}  // namespace exseq
