#pragma once

#include "exseq/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exseq {

// Numerical class of an object: rank, first Chern class, degree of c2.
struct NumClass {
    Int e;
    DivisorClass c1;
    Int c2;

    friend bool operator==(const NumClass& a, const NumClass& b) {
        return a.e == b.e && a.c1 == b.c1 && a.c2 == b.c2;
    }
    friend bool operator!=(const NumClass& a, const NumClass& b) { return !(a == b); }
};

using Sequence = std::vector<NumClass>;

struct ChernCharacter {
    Int ch0;
    DivisorClass ch1;
    Rat ch2;

    friend bool operator==(const ChernCharacter& a, const ChernCharacter& b) {
        return a.ch0 == b.ch0 && a.ch1 == b.ch1 && a.ch2 == b.ch2;
    }
};

inline ChernCharacter operator+(const ChernCharacter& a, const ChernCharacter& b) {
    return {a.ch0 + b.ch0, a.ch1 + b.ch1, a.ch2 + b.ch2};
}

inline ChernCharacter operator*(const Int& s, const ChernCharacter& a) {
    return {s * a.ch0, s * a.ch1, Rat(s) * a.ch2};
}

inline ChernCharacter operator-(const ChernCharacter& a) { return {-a.ch0, -a.ch1, -a.ch2}; }

inline ChernCharacter operator-(const ChernCharacter& a, const ChernCharacter& b) { return a + (-b); }

inline ChernCharacter chern_character(const IntersectionLattice& L, const NumClass& N) {
    return {N.e, N.c1, make_rat(pair(L, N.c1, N.c1), 2) - Rat(N.c2)};
}

inline NumClass from_chern(const IntersectionLattice& L, const ChernCharacter& C) {
    Rat c2 = make_rat(pair(L, C.ch1, C.ch1), 2) - C.ch2;
    return {C.ch0, C.ch1, as_integer(c2, "second Chern class")};
}

// Tensor product with the line bundle O(D).
inline NumClass twist(const IntersectionLattice& L, const NumClass& N, const DivisorClass& D) {
    const ChernCharacter c = chern_character(L, N);
    const Rat d2 = make_rat(pair(L, D, D), 2);
    ChernCharacter r{c.ch0, c.ch1 + c.ch0 * D, c.ch2 + Rat(pair(L, c.ch1, D)) + Rat(c.ch0) * d2};
    return from_chern(L, r);
}

// E tensor the anticanonical bundle: the helix step E_{i+n} = E_i (x) omega^{-1}.
inline NumClass serre_twist_inverse(const IntersectionLattice& L, const NumClass& N) {
    return twist(L, N, -L.K);
}

inline NumClass serre_twist(const IntersectionLattice& L, const NumClass& N) { return twist(L, N, L.K); }

// Shift E[1]: the Chern character changes sign.
inline NumClass shift(const IntersectionLattice& L, const NumClass& N) {
    return from_chern(L, -chern_character(L, N));
}

inline DivisorClass rel_c1(const NumClass& E, const NumClass& F) { return E.e * F.c1 - F.e * E.c1; }

inline Int euler(const IntersectionLattice& L, const NumClass& E, const NumClass& F) {
    const Rat e = E.e, f = F.e;
    const DivisorClass c = rel_c1(E, F);
    Rat chi = e * f - make_rat(pair(L, L.K, c), 2);
    chi += make_rat(F.e * pair(L, E.c1, E.c1) + E.e * pair(L, F.c1, F.c1) - 2 * pair(L, E.c1, F.c1), 2);
    chi -= Rat(F.e * E.c2 + E.e * F.c2);
    return as_integer(chi, "Euler pairing");
}

inline bool is_num_exceptional(const IntersectionLattice& L, const NumClass& N) {
    return euler(L, N, N) == 1;
}

// The Euler pairing of two numerically exceptional classes, through the
// simplified formula matching the vanishing pattern of the ranks.
inline Int euler_specialized(const IntersectionLattice& L, const NumClass& E, const NumClass& F) {
    if (!is_num_exceptional(L, E) || !is_num_exceptional(L, F))
        throw DomainError("euler_specialized needs numerically exceptional classes");
    const Int e = E.e, f = F.e;
    const Int ef = pair(L, E.c1, F.c1);
    Rat chi;
    if (e != 0 && f != 0) {
        const DivisorClass c = rel_c1(E, F);
        chi = -make_rat(pair(L, L.K, c), 2) + make_rat(pair(L, c, c) + e * e + f * f, 2 * e * f);
    } else if (e == 0 && f != 0) {
        chi = make_rat(f * pair(L, L.K, E.c1), 2) - (make_rat(f, 2) + Rat(ef + f * E.c2));
    } else if (e != 0 && f == 0) {
        chi = -make_rat(e * pair(L, L.K, F.c1), 2) - (make_rat(e, 2) + Rat(ef + e * F.c2));
    } else {
        chi = -ef;
    }
    return as_integer(chi, "specialized Euler pairing");
}

inline QDivisorClass slope(const NumClass& N) {
    if (N.e == 0) throw DomainError("slope of a rank-zero class");
    return scale(N.c1, make_rat(1, N.e));
}

inline QDivisorClass slope_difference(const NumClass& E, const NumClass& F) { return slope(F) - slope(E); }

inline Int anticanonical_degree(const IntersectionLattice& L, const NumClass& Z) { return -pair(L, L.K, Z.c1); }

// Representative of a rank-zero class up to shift with -K.c1 >= 0.
inline NumClass normalize_rank_zero(const IntersectionLattice& L, const NumClass& Z) {
    if (Z.e != 0) return Z;
    return anticanonical_degree(L, Z) < 0 ? shift(L, Z) : Z;
}

// c1(Z).s(E) + c2(Z) for the nonzero-rank members of seq, taken to follow Z.
inline Rat delta(const IntersectionLattice& L, const NumClass& Z, const Sequence& seq) {
    if (Z.e != 0) throw DomainError("delta needs a rank-zero class");
    std::optional<Rat> value;
    for (const auto& E : seq) {
        if (E.e == 0) continue;
        Rat d = pair(L, Z.c1, slope(E)) + Rat(Z.c2);
        if (value && *value != d) throw DomainError("delta depends on the chosen member");
        value = d;
    }
    if (!value) throw DomainError("delta needs a member of nonzero rank");
    return *value;
}

// The members following position k along the helix, within one period.
inline Sequence helix_window_after(const IntersectionLattice& L, const Sequence& seq, std::size_t k) {
    Sequence w;
    for (std::size_t i = k + 1; i < seq.size(); ++i) w.push_back(seq[i]);
    for (std::size_t i = 0; i < k; ++i) w.push_back(serre_twist_inverse(L, seq[i]));
    return w;
}

inline DivisorClass normalizing_twist(const IntersectionLattice& L, const Sequence& zs) {
    DivisorClass D = L.zero();
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i].e != 0) throw DomainError("normalizing_twist needs rank-zero classes");
        if (pair(L, zs[i].c1, zs[i].c1) != -1) throw DomainError("rank-zero class with c1^2 != -1");
        for (std::size_t j = 0; j < i; ++j)
            if (pair(L, zs[i].c1, zs[j].c1) != 0) throw DomainError("rank-zero classes are not orthogonal");
        D -= zs[i].c2 * zs[i].c1;
    }
    return D;
}

struct SequenceDiagnostics {
    std::vector<std::vector<Int>> chi;
    std::vector<bool> exceptional;
    std::vector<std::pair<std::size_t, std::size_t>> nonvanishing;  // (i, j), i > j, chi(E_i, E_j) != 0
    std::vector<std::size_t> rank_zero;
    bool rank_zero_bound = true;
    bool rank_zero_orthogonal = true;
    bool full_length = false;
    // Per rank-zero member, on its representative with -K.c1 >= 0; empty when not full length.
    std::vector<Int> anticanonical_degrees;
    std::vector<std::optional<Rat>> deltas;
    bool rank_zero_conditions = true;
    std::vector<std::string> messages;

    bool all_exceptional() const {
        for (bool b : exceptional)
            if (!b) return false;
        return true;
    }
    bool ok() const {
        return all_exceptional() && nonvanishing.empty() && rank_zero_bound && rank_zero_orthogonal &&
               rank_zero_conditions;
    }
};

inline SequenceDiagnostics validate_sequence(const IntersectionLattice& L, const Sequence& seq) {
    SequenceDiagnostics d;
    const std::size_t n = seq.size();
    for (const auto& E : seq)
        if (E.c1.size() != static_cast<std::size_t>(L.rho))
            throw std::invalid_argument("class dimension does not match lattice");
    d.chi.assign(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.chi[i][j] = euler(L, seq[i], seq[j]);
    for (std::size_t i = 0; i < n; ++i) {
        d.exceptional.push_back(d.chi[i][i] == 1);
        if (d.chi[i][i] != 1)
            d.messages.push_back("member " + std::to_string(i + 1) + " has chi = " + to_string(d.chi[i][i]));
        for (std::size_t j = 0; j < i; ++j)
            if (d.chi[i][j] != 0) {
                d.nonvanishing.emplace_back(i, j);
                d.messages.push_back("chi(E" + std::to_string(i + 1) + ", E" + std::to_string(j + 1) +
                                     ") = " + to_string(d.chi[i][j]));
            }
        if (seq[i].e == 0) d.rank_zero.push_back(i);
    }
    const auto t = static_cast<long>(d.rank_zero.size());
    d.rank_zero_bound = t <= L.n() - 3;
    if (!d.rank_zero_bound) d.messages.push_back("too many rank-zero members");
    for (std::size_t a = 0; a < d.rank_zero.size(); ++a) {
        const auto& Z = seq[d.rank_zero[a]];
        if (pair(L, Z.c1, Z.c1) != -1) {
            d.rank_zero_orthogonal = false;
            d.messages.push_back("rank-zero member " + std::to_string(d.rank_zero[a] + 1) + " has c1^2 != -1");
        }
        for (std::size_t b = 0; b < a; ++b)
            if (pair(L, Z.c1, seq[d.rank_zero[b]].c1) != 0) {
                d.rank_zero_orthogonal = false;
                d.messages.push_back("rank-zero members are not orthogonal");
            }
    }
    d.full_length = n == static_cast<std::size_t>(L.n());
    if (!d.full_length || !d.all_exceptional() || !d.nonvanishing.empty()) return d;
    for (std::size_t k : d.rank_zero) {
        const NumClass Z = normalize_rank_zero(L, seq[k]);
        const Int deg = anticanonical_degree(L, Z);
        d.anticanonical_degrees.push_back(deg);
        std::optional<Rat> del;
        try {
            del = delta(L, Z, helix_window_after(L, seq, k));
        } catch (const DomainError& ex) {
            d.messages.push_back(std::string("member ") + std::to_string(k + 1) + ": " + ex.what());
        }
        d.deltas.push_back(del);
        if (deg != 1 || !del || *del != 0) {
            d.rank_zero_conditions = false;
            d.messages.push_back("rank-zero member " + std::to_string(k + 1) + " violates -K.c1 = 1, delta = 0");
        }
    }
    return d;
}

}  // namespace exseq
