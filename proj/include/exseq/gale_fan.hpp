#pragma once

#include "exseq/toric_geometry.hpp"
#include "exseq/toric_system.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace exseq {

// a_k = r_k^2 r_{k+1}^2 (A~_k . A~_k), the middle coefficient of the relation around ray k+1.
inline std::vector<Int> relation_coefficients(const IntersectionLattice& L, const ReducedToricSystem& rts) {
    const std::size_t m = rts.Atildes.size();
    std::vector<Int> a;
    for (std::size_t k = 0; k < m; ++k) {
        const Int r0 = rts.ranks[k], r1 = rts.ranks[next_index(k, m)];
        a.push_back(as_integer(Rat(r0 * r0 * r1 * r1) * pair(L, rts.Atildes[k], rts.Atildes[k]),
                               "relation coefficient"));
    }
    return a;
}

namespace detail {

// Runs the recurrence r_{k+1}^2 l_k + a_k l_{k+1} + r_k^2 l_{k+2} = 0 from l_0 = (1,0), l_1 = (c, r_0^2).
inline std::optional<std::vector<V2>> try_seed(const std::vector<Int>& sq, const std::vector<Int>& a,
                                               const Int& c) {
    const std::size_t m = sq.size();
    std::vector<V2> l{{1, 0}, {c, sq[0]}};
    if (!is_primitive(l[1])) return std::nullopt;
    for (std::size_t k = 0; k < m; ++k) {
        const V2 num = -(sq[(k + 1) % m] * l[k] + a[k] * l[k + 1]);
        if (!divides(sq[k], num.x) || !divides(sq[k], num.y)) return std::nullopt;
        const V2 nxt = div_exact(num, sq[k], "fan recurrence");
        if (!is_primitive(nxt)) return std::nullopt;
        l.push_back(nxt);
    }
    if (l[m] != l[0] || l[m + 1] != l[1]) return std::nullopt;
    l.resize(m);
    return l;
}

}  // namespace detail

// Gale-dual fan of a reduced toric system: cone k = (l_k, l_{k+1}) belongs to the k-th member,
// and l_{k+1} is the ray of A~_k.
inline ToricFan build_fan(const IntersectionLattice& L, const ReducedToricSystem& rts, unsigned jobs = 1) {
    const std::size_t m = rts.Atildes.size();
    if (m < 3 || rts.ranks.size() != m) throw DomainError("build_fan needs at least three classes");
    std::vector<Int> sq;
    for (const auto& r : rts.ranks) {
        if (r == 0) throw DomainError("build_fan needs nonzero ranks");
        sq.push_back(r * r);
    }
    const std::vector<Int> a_all = relation_coefficients(L, rts);

    // Seed the recurrence at the cone of smallest volume, so that few candidates need trying.
    const std::size_t s0 = static_cast<std::size_t>(std::min_element(sq.begin(), sq.end()) - sq.begin());
    std::vector<Int> sq_rot(m), a(m);
    for (std::size_t k = 0; k < m; ++k) {
        sq_rot[k] = sq[(k + s0) % m];
        a[k] = a_all[(k + s0) % m];
    }
    std::swap(sq, sq_rot);

    // Candidates c with gcd(c, r_0^2) = 1 and r_0^2 | r_1^2 + a_0 c.
    // The congruence a_0 c = -r_1^2 mod r_0^2 has gcd(a_0, r_0^2) solutions when solvable.
    std::vector<Int> cands;
    const Int common = gcd_int(a[0], sq[0]);
    if (divides(common, sq[1 % m])) {
        const Int mod = sq[0] / common;
        Int c0 = 0;
        if (mod > 1) {
            Int inv;
            const Int a0 = mod_pos(a[0] / common, mod);
            mpz_invert(inv.get_mpz_t(), a0.get_mpz_t(), mod.get_mpz_t());
            c0 = mod_pos(-(sq[1 % m] / common) * inv, mod);
        }
        for (Int c = c0; c < sq[0]; c += mod)
            if (gcd_int(c, sq[0]) == 1) cands.push_back(c);
    }

    std::optional<std::vector<V2>> rays;
    if (jobs <= 1 || cands.size() < 2) {
        for (const auto& c : cands)
            if ((rays = detail::try_seed(sq, a, c))) break;
    } else {
        const std::size_t chunks = std::min<std::size_t>(jobs, cands.size());
        std::vector<std::future<std::optional<std::vector<V2>>>> fs;
        for (std::size_t t = 0; t < chunks; ++t)
            fs.push_back(std::async(std::launch::async, [&, t] {
                std::optional<std::vector<V2>> best;
                for (std::size_t i = t; i < cands.size(); i += chunks)
                    if ((best = detail::try_seed(sq, a, cands[i]))) break;
                return best;
            }));
        for (auto& f : fs) {
            auto r = f.get();
            if (r && (!rays || (*r)[1].x < (*rays)[1].x)) rays = std::move(r);
        }
    }
    if (!rays) throw DomainError("no seed gives an integral, primitive, closing fan");

    // Undo the rotation and normalize so that cone 0 is (1, 0), (-k, v) with 0 <= k < v.
    std::swap(sq, sq_rot);
    std::vector<V2> ordered(m);
    for (std::size_t k = 0; k < m; ++k) ordered[(k + s0) % m] = (*rays)[k];
    const M2 g = normalize_cone(ordered[0], ordered[1]).to_normal;
    for (auto& l : ordered) l = g(l);

    ToricFan fan = make_fan(ordered);
    for (std::size_t k = 0; k < m; ++k) {
        if (fan.volumes[k] != sq[k]) throw std::logic_error("cone volume differs from the squared rank");
        if (a_all[k] == 0 && (sq[k] != sq[(k + 1) % m] || fan.ray(k) != -fan.ray(k + 2)))
            throw std::logic_error("vanishing relation coefficient without opposite rays");
    }
    if (fan.winding != 1) throw std::logic_error("fan winds " + fan.winding.get_str() + " times");
    return fan;
}

// Ray k+1 carries the rank-zero classes with phi = k.
inline ToricFan attach_multiplicities(const ToricSystem& ts, ToricFan fan) {
    const std::size_t m = fan.size();
    if (ts.As.size() != m) throw DomainError("toric system and fan sizes differ");
    for (auto& r : fan.rays) r.multiplicity = 1;
    for (std::size_t p : ts.phi) fan.rays[next_index(p, m)].multiplicity += 1;
    return fan;
}

struct SequenceFan {
    ToricSystem system;
    ReducedToricSystem reduced;
    ToricFan fan;
};

inline SequenceFan fan_of_sequence(const IntersectionLattice& L, const Sequence& seq, unsigned jobs = 1) {
    SequenceFan sf;
    sf.system = extract(L, seq);
    sf.reduced = contract(L, sf.system);
    sf.fan = attach_multiplicities(sf.system, build_fan(L, sf.reduced, jobs));
    return sf;
}

struct CircumferenceData {
    V2 p;        // l_{k+1} - l_k
    QVec q;      // p / v_k
    V2 w;        // r_k q
    Int length;  // lattice length of p
};

inline CircumferenceData circumference(const ToricFan& fan, std::size_t k, const Int& rank) {
    if (rank == 0) throw DomainError("circumference needs a nonzero rank");
    const Int v = fan.volumes.at(k);
    if (v != rank * rank) throw DomainError("cone volume is not the squared rank");
    CircumferenceData d;
    d.p = fan.ray(k + 1) - fan.ray(k);
    d.q = QVec{make_rat(d.p.x, v), make_rat(d.p.y, v)};
    d.w = div_exact(d.p, rank, "circumference segment");
    d.length = lattice_length(d.p);
    if (d.length != abs(rank)) throw DomainError("circumference segment length differs from the rank");
    return d;
}

enum class Convexity { convex, concave, flat };

inline const char* to_string(Convexity c) {
    switch (c) {
        case Convexity::convex: return "convex";
        case Convexity::concave: return "concave";
        default: return "flat";
    }
}

struct ConvexityResult {
    Convexity kind;
    Int a;      // c1(E,F)^2
    Int value;  // a + e^2 + f^2
};

inline ConvexityResult convexity(const IntersectionLattice& L, const NumClass& E, const NumClass& F) {
    if (E.e == 0 || F.e == 0) throw DomainError("convexity needs nonzero ranks");
    if (!is_num_exceptional(L, E) || !is_num_exceptional(L, F) || euler(L, F, E) != 0)
        throw DomainError("convexity needs a numerically exceptional pair");
    const DivisorClass c = rel_c1(E, F);
    ConvexityResult r;
    r.a = pair(L, c, c);
    r.value = r.a + E.e * E.e + F.e * F.e;
    r.kind = r.value > 0 ? Convexity::convex : (r.value < 0 ? Convexity::concave : Convexity::flat);
    return r;
}

struct LocalityReport {
    bool unchanged_rays_match = false;  // one automorphism matches every other ray
    bool ray_formula = false;           // moved ray agrees with the transformation formula
    bool w_transform = false;           // new segments are the predicted combinations of w_e, w_f
    bool lengths_preserved = false;     // lattice lengths of the segments are unchanged as a pair
    bool chi_determinant = false;       // det(w_e, w_f) = chi(E, F)
    std::size_t moved_ray = 0;
    std::vector<std::string> messages;
    bool ok() const {
        return unchanged_rays_match && ray_formula && w_transform && lengths_preserved && chi_determinant;
    }
};

// Compares the fans of seq and of its mutation at `step`; both must have only nonzero ranks.
inline LocalityReport mutation_locality_check(const IntersectionLattice& L, const Sequence& seq,
                                              const MutationStep& step) {
    LocalityReport rep;
    for (const auto& E : seq)
        if (E.e == 0) throw DomainError("locality check needs nonzero ranks");
    const Sequence out = mutate_seq(L, seq, step);
    for (const auto& E : out)
        if (E.e == 0) throw DomainError("mutation produces a rank-zero member");
    const ToricFan before = fan_of_sequence(L, seq).fan;
    const ToricFan after = fan_of_sequence(L, out).fan;
    const std::size_t m = before.size(), p = step.position;
    rep.moved_ray = (p + 1) % m;

    // Align `after` onto `before` using two consecutive unchanged rays.
    std::size_t j = (p + 2) % m;
    M2 g;
    if (!solve_linear_map(after.ray(j), after.ray(j + 1), before.ray(j), before.ray(j + 1), g) ||
        g.determinant() != 1) {
        rep.messages.push_back("no orientation-preserving alignment");
        return rep;
    }
    rep.unchanged_rays_match = true;
    for (std::size_t i = 0; i < m; ++i)
        if (i != rep.moved_ray && g(after.ray(i)) != before.ray(i)) rep.unchanged_rays_match = false;
    if (!rep.unchanged_rays_match) rep.messages.push_back("rays other than the mutated one moved");

    const NumClass& E = seq[p];
    const NumClass& F = seq[p + 1];
    const Int e = E.e, f = F.e, chi = euler(L, E, F);
    const DivisorClass c = rel_c1(E, F);
    const Int a = pair(L, c, c);
    const V2 le = before.ray(p), l = before.ray(p + 1), lf = before.ray(p + 2);
    const V2 we = div_exact(l - le, e, "w_e"), wf = div_exact(lf - l, f, "w_f");
    rep.chi_determinant = det(we, wf) == chi;

    const V2 moved = g(after.ray(p + 1));
    V2 w1, w2;
    if (step.direction == Direction::right) {
        const Int rk = exact_div(a + f * f, e, "rank of the right mutation");
        rep.ray_formula = moved == lf + rk * we && moved == le + f * (chi * we + wf);
        w1 = div_exact(moved - le, f, "new w");
        w2 = div_exact(lf - moved, rk, "new w");
        rep.w_transform = w1 == chi * we + wf && w2 == -we;
    } else {
        const Int rk = exact_div(a + e * e, f, "rank of the left mutation");
        rep.ray_formula = moved == le - rk * wf && moved == lf - e * (chi * wf + we);
        w1 = div_exact(moved - le, rk, "new w");
        w2 = div_exact(lf - moved, e, "new w");
        rep.w_transform = w1 == -wf && w2 == we + chi * wf;
    }
    const Int a0 = lattice_length(we), a1 = lattice_length(wf);
    const Int b0 = lattice_length(w1), b1 = lattice_length(w2);
    rep.lengths_preserved = (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0);
    if (!rep.ray_formula) rep.messages.push_back("moved ray differs from the transformation formula");
    if (!rep.w_transform) rep.messages.push_back("segments do not transform as predicted");
    if (!rep.lengths_preserved) rep.messages.push_back("segment lengths changed");
    if (!rep.chi_determinant) rep.messages.push_back("det(w_e, w_f) differs from chi");
    return rep;
}

// When the left mutation of (E_p, E_{p+1}) has rank zero: e_{p+1} = -+e_p^2 (the sign is that of
// -K.c1 of the mutated class) and e_p^4 l_p - e_p^2 l_{p+1} + e_p^2 l_{p+2} = 0 on the fan of seq.
inline bool zero_mutation_relation(const IntersectionLattice& L, const Sequence& seq, std::size_t p) {
    const NumClass& E = seq.at(p);
    const NumClass& F = seq.at(p + 1);
    if (E.e == 0 || F.e == 0) throw DomainError("zero_mutation_relation needs nonzero ranks");
    const Int chi = euler(L, E, F);
    if (chi * E.e - F.e != 0) throw DomainError("left mutation does not have rank zero");
    const ToricFan fan = fan_of_sequence(L, seq).fan;
    const Int e2 = E.e * E.e;
    const NumClass Z = mutate_pair(L, E, F, Direction::left).first;
    const Int sign = anticanonical_degree(L, Z) == 1 ? -1 : 1;
    return F.e == sign * e2 && e2 * e2 * fan.ray(p) - e2 * fan.ray(p + 1) + e2 * fan.ray(p + 2) == V2{0, 0};
}

// Among the A~_k with nonnegative square, at most two, and cyclically adjacent, when m >= 4.
struct PositiveSquareReport {
    std::vector<std::size_t> nonnegative;
    std::vector<std::size_t> positive;
    bool ok = true;
};

inline PositiveSquareReport positive_square_diagnostic(const IntersectionLattice& L, const ReducedToricSystem& rts) {
    PositiveSquareReport r;
    const std::size_t m = rts.Atildes.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Rat s = pair(L, rts.Atildes[k], rts.Atildes[k]);
        if (s >= 0) r.nonnegative.push_back(k);
        if (s > 0) r.positive.push_back(k);
    }
    if (m < 4) return r;
    for (std::size_t i : r.nonnegative)
        for (std::size_t j : r.positive) {
            if (j == i) continue;
            if (j != next_index(i, m) && j != prev_index(i, m)) r.ok = false;
        }
    for (std::size_t i : r.nonnegative) {
        std::size_t others = 0;
        for (std::size_t j : r.positive) others += j != i;
        if (others > 1) r.ok = false;
    }
    return r;
}

}  // namespace exseq
