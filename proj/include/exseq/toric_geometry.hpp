#pragma once

#include "exseq/fan.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace exseq {

// Cyclic quotient singularity 1/v(1, k), with the automorphism taking the cone to (1,0), (-k, v).
struct SingularityType {
    Int v = 1;
    Int k = 0;
    M2 to_normal{1, 0, 0, 1};
    // Of the form 1/e^2 (1, k'e - 1) with e >= 2 and gcd(k', e) = 1.
    bool t_form = false;
    Int e = 1;
    Int kprime = 0;

    bool smooth() const { return v == 1; }
};

inline SingularityType normalize_cone(const V2& l1, const V2& l2) {
    if (!is_primitive(l1) || !is_primitive(l2)) throw DomainError("cone generators must be primitive");
    SingularityType t;
    t.v = det(l1, l2);
    if (t.v <= 0) throw DomainError("cone generators are not positively oriented");
    const M2 first = to_first_axis(l1);
    const V2 s = first(l2);  // (s.x, v)
    t.k = mod_pos(-s.x, t.v);
    const Int j = exact_div(-t.k - s.x, t.v, "cone shear");
    t.to_normal = M2{1, j, 0, 1} * first;
    return t;
}

inline SingularityType classify_cone(const V2& l1, const V2& l2) {
    SingularityType t = normalize_cone(l1, l2);
    if (t.v == 1) return t;
    const Int e = exact_sqrt(t.v);
    if (e >= 2 && divides(e, t.k + 1)) {
        const Int kp = (t.k + 1) / e;
        if (gcd_int(kp, e) == 1) {
            t.t_form = true;
            t.e = e;
            t.kprime = kp;
        }
    }
    return t;
}

struct HJExpansion {
    std::vector<Int> bs;
    std::vector<Int> volumes;  // V_0 = v, V_1 = k, ..., V_r = 1
};

// v/k = [b_1, ..., b_r]; the smooth cone (1, 0) gives the empty expansion.
inline HJExpansion hj_expand(const Int& v, const Int& k) {
    HJExpansion h;
    if (v == 1 && k == 0) {
        h.volumes = {Int(1)};
        return h;
    }
    if (!(k > 0 && k < v) || gcd_int(v, k) != 1) throw DomainError("hj_expand needs 0 < k < v coprime");
    Int a = v, b = k;
    h.volumes.push_back(a);
    while (b != 0) {
        const Int q = floor_div(a + b - 1, b);
        h.bs.push_back(q);
        const Int next = q * b - a;
        a = b;
        b = next;
        h.volumes.push_back(a);
    }
    return h;
}

inline Rat hj_value(const std::vector<Int>& bs) {
    if (bs.empty()) throw DomainError("empty continued fraction");
    Rat x = bs.back();
    for (std::size_t i = bs.size() - 1; i-- > 0;) x = Rat(bs[i]) - 1 / x;
    return x;
}

// Class T test by undoing the two growth rules until [4] or [3, 2, ..., 2, 3] remains.
inline bool is_T(std::vector<Int> bs) {
    while (!bs.empty()) {
        if (bs.size() == 1) return bs[0] == 4;
        if (bs.front() == 3 && bs.back() == 3) {
            bool inner_twos = true;
            for (std::size_t i = 1; i + 1 < bs.size(); ++i) inner_twos = inner_twos && bs[i] == 2;
            if (inner_twos) return true;
        }
        if (bs.front() == 2 && bs.back() >= 3) {
            bs.erase(bs.begin());
            bs.back() -= 1;
        } else if (bs.back() == 2 && bs.front() >= 3) {
            bs.pop_back();
            bs.front() -= 1;
        } else {
            return false;
        }
    }
    return false;
}

inline bool is_T(const HJExpansion& h) { return is_T(h.bs); }

inline Int circumference_length(const Int& v, const Int& k) { return gcd_int(v, k + 1); }

// Primitive l1, l2, l3 with a1 l1 + a2 l2 + a3 l3 = 0 and
// det(l1, l2) = a3, det(l2, l3) = a1, det(l3, l1) = a2; l1 = (1, 0), l2 = (x, a3), -a3 < x <= 0.
inline std::array<V2, 3> normalize_triple(const Int& a1, const Int& a2, const Int& a3) {
    if (a1 <= 0 || a3 <= 0) throw DomainError("normalize_triple needs a1, a3 > 0");
    const Int g = gcd_int(gcd_int(a1, a2), a3);
    if (gcd_int(a1, a2) != g || gcd_int(a2, a3) != g || gcd_int(a1, a3) != g)
        throw DomainError("pairwise gcds of the coefficients differ");
    const V2 l1{1, 0};
    for (Int x = 0; x > -a3; --x) {
        const Int num = -(a1 + a2 * x);
        if (!divides(a3, num)) continue;
        const V2 l2{x, a3}, l3{num / a3, -a2};
        if (is_primitive(l2) && is_primitive(l3)) return {l1, l2, l3};
    }
    throw DomainError("no integral primitive solution for the triple");
}

// Self-intersection of the canonical class of the complete toric surface.
inline Rat k_squared(const std::vector<V2>& rays) {
    if (winding_number(rays) != 1) throw DomainError("k_squared needs a fan of winding number 1");
    const std::size_t m = rays.size();
    Rat total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const V2& prev = rays[(i + m - 1) % m];
        const V2& next = rays[(i + 1) % m];
        const Int vi = det(prev, rays[i]), vn = det(rays[i], next), a = det(next, prev);
        total += make_rat(a + vi + vn, vi * vn);
    }
    return total;
}

inline Rat k_squared(const ToricFan& f) { return k_squared(f.vectors()); }

inline std::vector<SingularityType> classify_cones(const ToricFan& f) {
    std::vector<SingularityType> out;
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(classify_cone(f.ray(i), f.ray(i + 1)));
    return out;
}

// Relation data for a partial resolution step inside the cone (l1, l2), with l3 the next ray.
struct PartialStep {
    V2 xi;
    Int volume;           // V_s = det(xi_s, l2)
    Rat drop_formula;     // (V_s - V_{s-1} + 1)^2 / (V_{s-1} V_s)
    Rat drop_measured;    // K^2 before minus K^2 after inserting xi_s
    bool relation_ok = false;  // w xi + b l2 + V_s l3 = 0 and the telescoping identity
};

struct ConeResolution {
    std::size_t cone = 0;
    SingularityType type;
    HJExpansion hj;
    std::vector<PartialStep> steps;

    Rat drop_formula() const {
        Rat s = 0;
        for (const auto& p : steps) s += p.drop_formula;
        return s;
    }
};

struct Resolution {
    ToricFan smooth;
    std::vector<std::size_t> original_positions;  // where each input ray sits in `smooth`
    std::vector<ConeResolution> cones;
    Rat k_squared_before;
    Rat k_squared_after;

    bool ledger_ok() const {
        Rat total = 0;
        for (const auto& c : cones) {
            total += c.drop_formula();
            for (const auto& s : c.steps)
                if (!s.relation_ok || s.drop_formula != s.drop_measured) return false;
        }
        return k_squared_before - k_squared_after == total;
    }
};

inline M2 inverse_unimodular(const M2& g) {
    if (g.determinant() == 1) return {g.d, -g.b, -g.c, g.a};
    if (g.determinant() == -1) return {-g.d, g.b, g.c, -g.a};
    throw DomainError("matrix is not unimodular");
}

// Minimal resolution: inserts the Hirzebruch-Jung rays into every singular cone.
inline Resolution resolve_fan(const ToricFan& fan) {
    Resolution res;
    const std::size_t m = fan.size();
    res.k_squared_before = k_squared(fan);
    std::vector<V2> work = fan.vectors();
    std::vector<std::size_t> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i] = i;

    for (std::size_t i = 0; i < m; ++i) {
        const V2 l1 = fan.ray(i), l2 = fan.ray(i + 1), l3 = fan.ray(i + 2);
        ConeResolution cr;
        cr.cone = i;
        cr.type = classify_cone(l1, l2);
        if (cr.type.smooth()) continue;
        cr.hj = hj_expand(cr.type.v, cr.type.k);
        const M2 back = inverse_unimodular(cr.type.to_normal);
        const Int v = cr.type.v, w = det(l2, l3), a = det(l3, l1);
        const Rat start = make_rat(a + v + w, v * w);

        V2 prev{1, 0}, cur{0, 1};
        Rat telescoped = 0;
        std::size_t insert_at = pos[i] + 1;
        for (std::size_t s = 1; s <= cr.hj.bs.size(); ++s) {
            PartialStep st;
            st.xi = back(cur);
            st.volume = det(st.xi, l2);
            const Int Vp = cr.hj.volumes[s - 1], Vs = cr.hj.volumes[s];
            const Int diff = Vs - Vp + 1;
            st.drop_formula = make_rat(diff * diff, Vp * Vs);
            telescoped += make_rat(diff, Vp * Vs);

            const Rat before = k_squared(work);
            work.insert(work.begin() + static_cast<std::ptrdiff_t>(insert_at), st.xi);
            ++insert_at;
            st.drop_measured = before - k_squared(work);

            const Int b = det(l3, st.xi);
            const bool rel = (w * st.xi + b * l2 + Vs * l3) == V2{0, 0};
            const bool tele = start - make_rat(b + Vs + w, Vs * w) == telescoped;
            st.relation_ok = st.volume == Vs && rel && tele;
            cr.steps.push_back(st);

            const V2 nxt = cr.hj.bs[s - 1] * cur - prev;
            prev = cur;
            cur = nxt;
        }
        if (back(cur) != l2) throw std::logic_error("resolution rays do not end at the cone's second generator");
        for (std::size_t j = i + 1; j < m; ++j) pos[j] += cr.hj.bs.size();
        res.cones.push_back(std::move(cr));
    }
    std::vector<Int> mult(work.size(), Int(1));
    for (std::size_t i = 0; i < m; ++i) mult[pos[i]] = fan.rays[i].multiplicity;
    res.smooth = make_fan(work, mult);
    for (auto vol : res.smooth.volumes)
        if (vol != 1) throw std::logic_error("resolved fan is not smooth");
    res.original_positions = pos;
    res.k_squared_after = k_squared(res.smooth);
    return res;
}

// Self-intersections of the strict transforms of the original divisors on the minimal resolution.
struct SelfIntersectionReport {
    std::vector<Int> a;
    Int sum = 0;
    Int singular_cones = 0;       // |I|
    Rat expected;                 // K^2 - 2m + |I|
    bool noether_form = false;    // K^2 = 12 - m, so expected = 12 - 3m + |I|
    bool bsum_ok = true;          // sum b = 1 + 3r for each singular cone
    bool ok() const { return bsum_ok && Rat(sum) == expected; }
};

inline SelfIntersectionReport resolution_selfintersection_sum(const ToricFan& fan) {
    SelfIntersectionReport r;
    const Resolution res = resolve_fan(fan);
    for (const auto& c : res.cones) {
        if (!c.type.t_form) throw DomainError("cone " + std::to_string(c.cone + 1) + " is not a T-singularity");
        Int sb = 0;
        for (const auto& b : c.hj.bs) sb += b;
        if (sb != 1 + 3 * Int(static_cast<unsigned long>(c.hj.bs.size()))) r.bsum_ok = false;
        ++r.singular_cones;
    }
    const std::size_t M = res.smooth.size();
    for (std::size_t p : res.original_positions) {
        const Int ai = det(res.smooth.ray(p + 1), res.smooth.ray(p + M - 1));
        r.a.push_back(ai);
        r.sum += ai;
    }
    const Int m = static_cast<unsigned long>(fan.size());
    r.expected = res.k_squared_before - Rat(2 * m) + Rat(r.singular_cones);
    r.noether_form = res.k_squared_before == Rat(12 - m);
    return r;
}

// Per-ray shear terms: det(q_before, q_after) minus the contributions of the adjacent cones.
struct LambdaReport {
    std::vector<Rat> lambda;
    std::vector<Rat> lambda_by_coordinates;
    std::vector<Rat> alpha, beta;  // alpha from the cone before, beta from the cone after
    Rat sum;
    Int singular_cones = 0;
    Rat expected;                  // K^2 - 2m + |I|
    bool local_identity = true;    // alpha_{i+1} + beta_i = e for each singular cone i
    bool routes_agree = true;
    bool ok() const { return sum == expected && local_identity && routes_agree; }
};

inline LambdaReport lambda_terms(const ToricFan& fan) {
    LambdaReport r;
    const std::size_t m = fan.size();
    const auto types = classify_cones(fan);
    for (std::size_t i = 0; i < m; ++i) {
        if (types[i].smooth()) continue;
        if (!types[i].t_form) throw DomainError("cone " + std::to_string(i + 1) + " is not of type 1/e^2(1, ke-1)");
        ++r.singular_cones;
    }
    const M2 flip{-1, 0, 0, 1};
    const M2 quarter{0, -1, 1, 0};
    for (std::size_t i = 0; i < m; ++i) {
        const V2& prev = fan.ray(i + m - 1);
        const V2& l = fan.ray(i);
        const V2& next = fan.ray(i + 1);
        const SingularityType& before = types[(i + m - 1) % m];
        const SingularityType& after = types[i];
        const Int ve = det(prev, l), vf = det(l, next);
        const V2 pe = l - prev, pf = next - l;
        const Rat dq = make_rat(det(pe, pf), ve * vf);

        Int e = 1, f = 1;
        Rat alpha = 1, beta = 1;
        if (!before.smooth()) {
            e = before.e;
            const SingularityType mirrored = classify_cone(flip(l), flip(prev));
            alpha = make_rat(mirrored.k + 1, e);
        }
        if (!after.smooth()) {
            f = after.e;
            beta = make_rat(after.k + 1, f);
        }
        const Rat lam = dq - alpha / Rat(e) - beta / Rat(f);
        r.lambda.push_back(lam);
        r.alpha.push_back(alpha);
        r.beta.push_back(beta);

        // Second route: coordinates with l = (0, 1), l_e = (e^2, 1 - alpha e - lambda_1 e^2)
        // and l_f = (-f^2, 1 - beta f - lambda_2 f^2).
        const M2 g = quarter * to_first_axis(l);
        const V2 le = g(prev), lf = g(next);
        if (le.x != e * e || lf.x != -(f * f)) throw std::logic_error("unexpected coordinates around a ray");
        const Rat l1 = (Rat(1 - le.y) - alpha * Rat(e)) / Rat(e * e);
        const Rat l2 = (Rat(1 - lf.y) - beta * Rat(f)) / Rat(f * f);
        r.lambda_by_coordinates.push_back(l1 + l2);
        if (l1 + l2 != lam) r.routes_agree = false;
        r.sum += lam;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (types[i].smooth()) continue;
        if (r.alpha[(i + 1) % m] + r.beta[i] != Rat(types[i].e)) r.local_identity = false;
    }
    r.expected = k_squared(fan) - Rat(2 * Int(static_cast<unsigned long>(m))) + Rat(r.singular_cones);
    return r;
}

}  // namespace exseq
