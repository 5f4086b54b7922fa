#pragma once

#include "exseq/mutation.hpp"

#include <string>
#include <vector>

namespace exseq {

// Ranks and classes are indexed by the nonzero-rank members in order; As[k] sits
// between member k and member k+1 (cyclically), phi[i] indexes As.
struct ToricSystem {
    std::vector<DivisorClass> Es;
    std::vector<Int> ranks;
    std::vector<QDivisorClass> As;
    std::vector<std::size_t> phi;
};

struct ReducedToricSystem {
    std::vector<QDivisorClass> Atildes;
    std::vector<Int> ranks;
};

inline std::size_t next_index(std::size_t i, std::size_t m) { return (i + 1) % m; }
inline std::size_t prev_index(std::size_t i, std::size_t m) { return (i + m - 1) % m; }

inline ToricSystem extract(const IntersectionLattice& L, const Sequence& seq) {
    if (!validate_sequence(L, seq).ok()) throw DomainError("extract needs a valid sequence");
    ToricSystem ts;
    std::vector<const NumClass*> objs;
    for (const auto& E : seq) {
        if (E.e == 0)
            ts.Es.push_back(normalize_rank_zero(L, E).c1);
        else
            objs.push_back(&E);
    }
    const std::size_t m = objs.size();
    if (m == 0) throw DomainError("sequence has no member of nonzero rank");
    for (std::size_t k = 0; k < m; ++k) {
        ts.ranks.push_back(objs[k]->e);
        const QDivisorClass next = k + 1 < m ? slope(*objs[k + 1]) : slope(*objs[0]) - to_q(L.K);
        ts.As.push_back(next - slope(*objs[k]));
    }
    for (const auto& E : ts.Es) {
        std::size_t hits = 0, target = 0;
        for (std::size_t k = 0; k < m; ++k)
            if (pair(L, E, ts.As[k]) != 0) {
                ++hits;
                target = k;
            }
        if (hits != 1) throw DomainError("rank-zero class meets " + std::to_string(hits) + " classes A_k");
        ts.phi.push_back(target);
    }
    return ts;
}

struct ToricSystemReport {
    bool exceptional_classes = true;  // E^2 = -1, -K.E = 1, pairwise orthogonal
    bool integrality = true;          // r_k r_{k+1} A_k integral
    bool adjacent = true;             // A_k.A_{k+1} = 1/r_{k+1}^2
    bool adjacent_other_reading = true;  // A_k.A_{k+1} = 1/r_k^2
    bool nonadjacent = true;
    bool sum = true;
    bool phi = true;
    std::vector<std::string> messages;

    bool readings_disagree() const { return adjacent != adjacent_other_reading; }
    bool ok() const { return exceptional_classes && integrality && adjacent && nonadjacent && sum && phi; }
};

inline ToricSystemReport validate_toric_system(const IntersectionLattice& L, const ToricSystem& ts) {
    ToricSystemReport r;
    const std::size_t m = ts.As.size();
    if (m < 3 || ts.ranks.size() != m || ts.phi.size() != ts.Es.size()) {
        r.exceptional_classes = r.integrality = r.adjacent = r.adjacent_other_reading = false;
        r.nonadjacent = r.sum = r.phi = false;
        r.messages.push_back("malformed toric system");
        return r;
    }
    for (std::size_t i = 0; i < ts.Es.size(); ++i) {
        if (pair(L, ts.Es[i], ts.Es[i]) != -1 || pair(L, L.K, ts.Es[i]) != -1) r.exceptional_classes = false;
        for (std::size_t j = 0; j < i; ++j)
            if (pair(L, ts.Es[i], ts.Es[j]) != 0) r.exceptional_classes = false;
    }
    if (!r.exceptional_classes) r.messages.push_back("rank-zero classes violate E^2 = -1, -K.E = 1 or orthogonality");
    QDivisorClass total(static_cast<std::size_t>(L.rho));
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t k1 = next_index(k, m);
        total += ts.As[k];
        if (ts.ranks[k] == 0) {
            r.integrality = false;
            r.messages.push_back("zero rank in toric system");
            continue;
        }
        if (!is_integral(Rat(ts.ranks[k] * ts.ranks[k1]) * ts.As[k])) {
            r.integrality = false;
            r.messages.push_back("r_k r_{k+1} A_k not integral at k = " + std::to_string(k + 1));
        }
        const Rat prod = pair(L, ts.As[k], ts.As[k1]);
        if (prod != make_rat(1, ts.ranks[k1] * ts.ranks[k1])) {
            r.adjacent = false;
            r.messages.push_back("A_k.A_{k+1} = " + prod.get_str() + " at k = " + std::to_string(k + 1));
        }
        if (prod != make_rat(1, ts.ranks[k] * ts.ranks[k])) r.adjacent_other_reading = false;
        for (std::size_t l = 0; l < m; ++l) {
            if (l == k || l == k1 || k == next_index(l, m)) continue;
            if (pair(L, ts.As[k], ts.As[l]) != 0) {
                r.nonadjacent = false;
                r.messages.push_back("non-adjacent A_k.A_l != 0");
            }
        }
    }
    if (total != -to_q(L.K)) {
        r.sum = false;
        r.messages.push_back("sum of A_k differs from -K");
    }
    for (std::size_t i = 0; i < ts.Es.size(); ++i) {
        if (ts.phi[i] >= m) {
            r.phi = false;
            continue;
        }
        for (std::size_t k = 0; k < m; ++k) {
            const Rat p = pair(L, ts.Es[i], ts.As[k]);
            if ((k == ts.phi[i] && p != 1) || (k != ts.phi[i] && p != 0)) r.phi = false;
        }
    }
    if (!r.phi) r.messages.push_back("phi does not match the intersection pattern");
    if (r.readings_disagree()) r.messages.push_back("index readings of A_k.A_{k+1} disagree");
    return r;
}

// Rank over Q of a list of rational vectors.
inline std::size_t rational_rank(std::vector<QVec> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Rat f = rows[i][c] / rows[rank][c];
            rows[i] -= f * rows[rank];
        }
        ++rank;
    }
    return rank;
}

inline ReducedToricSystem contract(const IntersectionLattice& L, const ToricSystem& ts) {
    ReducedToricSystem r{ts.As, ts.ranks};
    for (std::size_t i = 0; i < ts.Es.size(); ++i) r.Atildes.at(ts.phi[i]) += to_q(ts.Es[i]);
    QDivisorClass total(static_cast<std::size_t>(L.rho));
    QDivisorClass expected = -to_q(L.K);
    for (const auto& A : r.Atildes) total += A;
    for (const auto& E : ts.Es) expected += to_q(E);
    if (total != expected) throw DomainError("contracted classes do not sum to -K + sum E_i");
    if (rational_rank(r.Atildes) + 2 != r.Atildes.size())
        throw DomainError("contracted classes do not span a space of rank m - 2");
    return r;
}

struct ZeroMoveReport {
    Sequence result;
    bool neighbour_rank_zero = false;
    bool transformation_matches = false;
};

// Moves the rank-zero member at position k past its right (L_k) or left (R_{k-1}) neighbour.
inline ZeroMoveReport move_rank_zero(const IntersectionLattice& L, const Sequence& seq, std::size_t k,
                                     Direction dir) {
    if (k >= seq.size() || seq[k].e != 0) throw DomainError("move_rank_zero needs a rank-zero member");
    const bool right = dir == Direction::right;
    if ((right && k + 1 >= seq.size()) || (!right && k == 0)) throw DomainError("no neighbour in that direction");
    const std::size_t nb = right ? k + 1 : k - 1;
    const MutationStep step = right ? MutationStep{k, Direction::left} : MutationStep{k - 1, Direction::right};

    ZeroMoveReport rep;
    rep.result = mutate_seq(L, seq, step);
    rep.neighbour_rank_zero = seq[nb].e == 0;
    const ToricSystem before = extract(L, seq), after = extract(L, rep.result);

    std::size_t zi = 0;  // index of the moving class among the rank-zero members
    for (std::size_t i = 0; i < k; ++i)
        if (seq[i].e == 0) ++zi;

    ToricSystem expected = before;
    const std::size_t m = before.As.size();
    if (rep.neighbour_rank_zero) {
        const std::size_t zj = right ? zi + 1 : zi - 1;
        std::swap(expected.Es[zi], expected.Es[zj]);
        std::swap(expected.phi[zi], expected.phi[zj]);
    } else {
        const std::size_t f = before.phi[zi];
        const QDivisorClass E = to_q(before.Es[zi]);
        if (right) {
            expected.As[f] += E;
            expected.As[next_index(f, m)] -= E;
            expected.phi[zi] = next_index(f, m);
        } else {
            expected.As[prev_index(f, m)] -= E;
            expected.As[f] += E;
            expected.phi[zi] = prev_index(f, m);
        }
    }
    rep.transformation_matches = expected.Es == after.Es && expected.As == after.As && expected.phi == after.phi;
    if (!rep.transformation_matches) throw std::logic_error("rank-zero move does not transform the toric system as expected");
    return rep;
}

}  // namespace exseq
