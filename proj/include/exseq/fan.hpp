#pragma once

#include "exseq/arith.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace exseq {

struct FanRay {
    V2 l;
    Int multiplicity = 1;
};

// Complete fan in the plane given by a cyclic, counterclockwise list of rays.
// volumes[i] = det(rays[i], rays[i+1]).
struct ToricFan {
    std::vector<FanRay> rays;
    std::vector<Int> volumes;
    Int winding = 0;

    std::size_t size() const { return rays.size(); }
    const V2& ray(std::size_t i) const { return rays[i % rays.size()].l; }
    std::vector<V2> vectors() const {
        std::vector<V2> v;
        for (const auto& r : rays) v.push_back(r.l);
        return v;
    }
    Int total_multiplicity() const {
        Int s = 0;
        for (const auto& r : rays) s += r.multiplicity;
        return s;
    }
};

// The x-axis direction (1,0) lies in the half-open cone (u, v].
inline bool crosses_first_axis(const V2& u, const V2& v) {
    const V2 d{1, 0};
    return det(u, d) > 0 && det(d, v) >= 0;
}

// Number of times the cyclic ray sequence goes around the origin.
inline Int winding_number(const std::vector<V2>& rays) {
    const std::size_t m = rays.size();
    if (m < 2) throw DomainError("winding number needs at least two rays");
    Int w = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const V2& u = rays[i];
        const V2& v = rays[(i + 1) % m];
        if (det(u, v) <= 0) throw DomainError("consecutive rays are not positively oriented");
        if (crosses_first_axis(u, v)) ++w;
    }
    return w;
}

inline ToricFan make_fan(const std::vector<V2>& rays, const std::vector<Int>& multiplicities = {}) {
    ToricFan f;
    const std::size_t m = rays.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_primitive(rays[i])) throw DomainError("fan ray is not primitive");
        f.rays.push_back({rays[i], multiplicities.empty() ? Int(1) : multiplicities.at(i)});
    }
    for (std::size_t i = 0; i < m; ++i) f.volumes.push_back(det(rays[i], rays[(i + 1) % m]));
    f.winding = winding_number(rays);
    return f;
}

namespace detail {
inline bool v2_less(const V2& a, const V2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

inline std::vector<V2> sorted_unique(std::vector<V2> v) {
    std::sort(v.begin(), v.end(), v2_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}
}  // namespace detail

inline bool same_ray_set(const std::vector<V2>& a, const std::vector<V2>& b) {
    return detail::sorted_unique(a) == detail::sorted_unique(b);
}

inline std::vector<V2> transform(const M2& g, const std::vector<V2>& v) {
    std::vector<V2> r;
    for (const auto& x : v) r.push_back(g(x));
    return r;
}

// All lattice automorphisms (det = +1, or +-1 when orientation_reversing_allowed)
// mapping the set of rays `from` onto the set `to`.
inline std::vector<M2> lattice_maps(const std::vector<V2>& from, const std::vector<V2>& to,
                                    bool orientation_reversing_allowed = true) {
    std::vector<M2> out;
    const auto src = detail::sorted_unique(from), dst = detail::sorted_unique(to);
    if (src.size() != dst.size() || src.size() < 2) return out;
    std::size_t j = 1;
    while (j < src.size() && det(src[0], src[j]) == 0) ++j;
    if (j == src.size()) return out;
    for (const auto& a : dst)
        for (const auto& b : dst) {
            M2 g;
            if (!solve_linear_map(src[0], src[j], a, b, g)) continue;
            const Int d = g.determinant();
            if (d != 1 && !(orientation_reversing_allowed && d == -1)) continue;
            if (detail::sorted_unique(transform(g, src)) != dst) continue;
            bool seen = false;
            for (const auto& h : out) seen = seen || (h.a == g.a && h.b == g.b && h.c == g.c && h.d == g.d);
            if (!seen) out.push_back(g);
        }
    return out;
}

inline bool lattice_equivalent(const std::vector<V2>& a, const std::vector<V2>& b) {
    return !lattice_maps(a, b).empty();
}

inline std::string to_string(const V2& v) { return "(" + v.x.get_str() + "," + v.y.get_str() + ")"; }

}  // namespace exseq
