#pragma once

#include "exseq/toric_geometry.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <tuple>
#include <vector>

namespace exseq {

// Solution of e^2 + f^2 + g^2 = 3efg with e <= f <= g.
struct MarkovTriple {
    Int e, f, g;

    friend bool operator==(const MarkovTriple& a, const MarkovTriple& b) {
        return a.e == b.e && a.f == b.f && a.g == b.g;
    }
    friend bool operator<(const MarkovTriple& a, const MarkovTriple& b) {
        return std::tie(a.e, a.f, a.g) < std::tie(b.e, b.f, b.g);
    }
};

inline bool is_markov(const Int& a, const Int& b, const Int& c) {
    return a * a + b * b + c * c == 3 * a * b * c;
}

inline MarkovTriple sorted_triple(Int a, Int b, Int c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return {a, b, c};
}

// The three exchange moves (e, f, g) -> (e, f, 3ef - g) and permutations.
inline std::vector<MarkovTriple> markov_neighbours(const MarkovTriple& t) {
    return {sorted_triple(3 * t.f * t.g - t.e, t.f, t.g), sorted_triple(t.e, 3 * t.e * t.g - t.f, t.g),
            sorted_triple(t.e, t.f, 3 * t.e * t.f - t.g)};
}

// All Markov triples with largest entry at most bound, sorted.
inline std::vector<MarkovTriple> markov_enumerate(const Int& bound, unsigned jobs = 1) {
    if (bound < 1) throw DomainError("markov_enumerate needs bound >= 1");
    std::set<MarkovTriple> seen{{1, 1, 1}};
    std::vector<MarkovTriple> frontier{{1, 1, 1}};
    auto expand = [&bound](const std::vector<MarkovTriple>& part) {
        std::vector<MarkovTriple> out;
        for (const auto& t : part)
            for (const auto& n : markov_neighbours(t))
                if (n.g <= bound) out.push_back(n);
        return out;
    };
    while (!frontier.empty()) {
        std::vector<MarkovTriple> found;
        if (jobs <= 1 || frontier.size() < 2 * jobs) {
            found = expand(frontier);
        } else {
            std::vector<std::future<std::vector<MarkovTriple>>> fs;
            const std::size_t chunk = (frontier.size() + jobs - 1) / jobs;
            for (std::size_t s = 0; s < frontier.size(); s += chunk) {
                std::vector<MarkovTriple> part(frontier.begin() + static_cast<std::ptrdiff_t>(s),
                                               frontier.begin() + static_cast<std::ptrdiff_t>(
                                                                      std::min(frontier.size(), s + chunk)));
                fs.push_back(std::async(std::launch::async, expand, std::move(part)));
            }
            for (auto& f : fs) {
                auto r = f.get();
                found.insert(found.end(), r.begin(), r.end());
            }
        }
        frontier.clear();
        for (auto& t : found)
            if (seen.insert(t).second) frontier.push_back(t);
    }
    std::vector<MarkovTriple> out(seen.begin(), seen.end());
    for (const auto& t : out)
        if (!is_markov(t.e, t.f, t.g)) throw std::logic_error("enumerated triple violates the Markov equation");
    return out;
}

// Fan of P(e^2, f^2, g^2): the relation g^2 l1 + f^2 l2 + e^2 l3 = 0.
inline ToricFan weighted_projective_fan(const MarkovTriple& t) {
    if (!is_markov(t.e, t.f, t.g)) throw DomainError("not a Markov triple");
    const auto l = normalize_triple(t.g * t.g, t.f * t.f, t.e * t.e);
    return make_fan({l[0], l[1], l[2]});
}

}  // namespace exseq
