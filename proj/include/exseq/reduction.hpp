#pragma once

#include "exseq/gale_fan.hpp"
#include "exseq/markov.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace exseq {

enum class NormalFormTag { none, markov_triple, rank_one_zero, rank_one };

inline const char* to_string(NormalFormTag t) {
    switch (t) {
        case NormalFormTag::markov_triple: return "markov-triple";
        case NormalFormTag::rank_one_zero: return "rank-one-zero";
        case NormalFormTag::rank_one: return "rank-one";
        default: return "none";
    }
}

struct ReductionCertificate {
    Sequence initial;
    Sequence final;
    std::vector<MutationStep> steps;
    std::vector<std::size_t> shifted;  // members of the mutated sequence replaced by their shift at the end
    NormalFormTag tag = NormalFormTag::none;
    bool budget_exceeded = false;
    std::size_t budget = 0;
    std::vector<std::string> log;
    std::vector<std::string> diagnostics;
};

// Applies the steps, then the final shifts, and compares with the recorded final sequence.
inline bool replays(const IntersectionLattice& L, const ReductionCertificate& c) {
    Sequence s = replay(L, c.initial, c.steps);
    for (std::size_t p : c.shifted) s.at(p) = shift(L, s.at(p));
    return s == c.final;
}

inline std::size_t reduction_budget(const Sequence& seq) {
    Int total = 0;
    for (const auto& E : seq) total += E.e * E.e;
    total *= static_cast<unsigned long>(seq.size());
    if (!total.fits_ulong_p()) return static_cast<std::size_t>(-1);
    return total.get_ui();
}

namespace detail {

inline Int max_abs(const Int& a, const Int& b) { return abs(a) > abs(b) ? abs(a) : abs(b); }

class Reducer {
public:
    Reducer(const IntersectionLattice& L, const Sequence& seq) : L_(L) {
        const auto d = validate_sequence(L, seq);
        if (!d.ok()) throw DomainError("reduction needs a valid sequence");
        if (!d.full_length) throw DomainError("reduction needs a sequence of full length n = rho + 2");
        cert_.initial = seq;
        cert_.budget = reduction_budget(seq);
        seq_ = seq;
    }

    const Sequence& seq() const { return seq_; }
    ReductionCertificate& cert() { return cert_; }
    const IntersectionLattice& lattice() const { return L_; }

    void step(const MutationStep& s) {
        if (cert_.steps.size() >= cert_.budget) throw BudgetExceeded("mutation budget exhausted");
        seq_ = mutate_seq(L_, seq_, s);
        cert_.steps.push_back(s);
    }

    std::size_t zero_count() const {
        std::size_t t = 0;
        for (const auto& E : seq_) t += E.e == 0;
        return t;
    }

    // Right mutations carry every rank-zero member to the head of the sequence.
    void zeros_to_front() {
        for (;;) {
            bool moved = false;
            for (std::size_t k = 1; k < seq_.size(); ++k)
                if (seq_[k].e == 0 && seq_[k - 1].e != 0) {
                    step({k - 1, Direction::right});
                    moved = true;
                    break;
                }
            if (!moved) return;
        }
    }

    // Left mutations carry the last member to the front, where it becomes E_n (x) omega up to shift.
    void rotate_last_to_front() {
        const NumClass last = seq_.back();
        for (std::size_t p = seq_.size() - 1; p-- > 0;) step({p, Direction::left});
        const NumClass expect = serre_twist(L_, last);
        if (seq_.front() != expect && seq_.front() != shift(L_, expect))
            throw std::logic_error("rotation does not produce the Serre twist of the last member");
        cert_.log.push_back("rotate last member to the front");
    }

    // Lemma-type descent on the adjacent nonzero pair at (p, p+1) while it is convex with a < 0.
    void work_pair(std::size_t p) {
        for (;;) {
            const NumClass& E = seq_[p];
            const NumClass& F = seq_[p + 1];
            if (E.e == 0 || F.e == 0) return;
            const ConvexityResult c = convexity(L_, E, F);
            if (!(c.kind == Convexity::convex && c.a < 0)) return;
            const Int maxsq = max_abs(E.e, F.e) * max_abs(E.e, F.e);
            const Int chi = euler(L_, E, F);
            const Int rl = chi * E.e - F.e, rr = chi * F.e - E.e;
            // (L_E F, E) keeps E and (F, R_F E) keeps F. Prefer options that lower the pair's maximum;
            // when |e| = |f| neither can, and the one-sided bound on the new rank is used instead.
            const Int rl2 = rl * rl, rr2 = rr * rr, e2 = E.e * E.e, f2 = F.e * F.e;
            const Int left_max = std::max(rl2, e2), right_max = std::max(rr2, f2);
            bool left_ok = left_max < maxsq, right_ok = right_max < maxsq;
            if (!left_ok && !right_ok) {
                left_ok = rl * rl < maxsq;
                right_ok = rr * rr < maxsq;
            }
            if (!left_ok && !right_ok) throw std::logic_error("neither mutation lowers the maximal rank");
            Direction d = Direction::right;
            if (left_ok && (!right_ok || rl * rl < rr * rr)) d = Direction::left;
            step({p, d});
            const Int newmax = max_abs(seq_[p].e, seq_[p + 1].e);
            cert_.log.push_back("pair " + std::to_string(p + 1) + " " + to_string(d) + ": max rank^2 " +
                                maxsq.get_str() + " -> " + Int(newmax * newmax).get_str());
            if (newmax * newmax > maxsq) throw std::logic_error("maximal rank increased");
            if (seq_[p].e == 0 || seq_[p + 1].e == 0) return;
            const ConvexityResult after = convexity(L_, seq_[p], seq_[p + 1]);
            if (after.kind == Convexity::flat) throw std::logic_error("a non-flat pair became flat");
            if (after.value >= c.value) throw std::logic_error("convexity did not decrease");
        }
    }

    // a + r^2 + r'^2 for the cyclic pair (last nonzero, first nonzero twisted by -K), from A~.
    std::pair<Int, Int> wrap_pair_data() const {
        const ToricSystem ts = extract(L_, seq_);
        const ReducedToricSystem rts = contract(L_, ts);
        const std::size_t m = rts.ranks.size();
        const Int r0 = rts.ranks[m - 1], r1 = rts.ranks[0];
        const Int a = as_integer(Rat(r0 * r0 * r1 * r1) * pair(L_, rts.Atildes[m - 1], rts.Atildes[m - 1]),
                                 "wrap coefficient");
        return {a, a + r0 * r0 + r1 * r1};
    }

    bool reduce_once() {
        const std::size_t t = zero_count();
        for (std::size_t p = t; p + 1 < seq_.size(); ++p) {
            const ConvexityResult c = convexity(L_, seq_[p], seq_[p + 1]);
            if (c.kind == Convexity::convex && c.a < 0) {
                work_pair(p);
                zeros_to_front();
                return true;
            }
        }
        const auto [a, value] = wrap_pair_data();
        if (value > 0 && a < 0) {
            rotate_last_to_front();
            zeros_to_front();
            return true;
        }
        return false;
    }

    void convexity_reduce() {
        zeros_to_front();
        while (reduce_once()) {
        }
        terminal_diagnostics();
    }

    // Compares the loop's stopping rule with the form stated for its result.
    void terminal_diagnostics() {
        const ToricSystem ts = extract(L_, seq_);
        const ReducedToricSystem rts = contract(L_, ts);
        const std::size_t m = rts.ranks.size();
        bool literal = true, stated = true;
        for (std::size_t k = 0; k < m; ++k) {
            const Int r0 = rts.ranks[k], r1 = rts.ranks[next_index(k, m)];
            const Rat sq = pair(L_, rts.Atildes[k], rts.Atildes[k]);
            const Int a = as_integer(Rat(r0 * r0 * r1 * r1) * sq, "pair coefficient");
            const Int value = a + r0 * r0 + r1 * r1;
            if (value > 0 && a < 0) literal = false;
            if (value >= 0 && sq <= 0) stated = false;
        }
        if (!literal) throw std::logic_error("convexity reduction stopped at a convex pair with a < 0");
        if (!stated)
            cert_.diagnostics.push_back(
                "terminal sequence has a non-concave pair with A~^2 <= 0 (the loop condition is met)");
        const PositiveSquareReport ps = positive_square_diagnostic(L_, rts);
        if (!ps.ok) cert_.diagnostics.push_back("more than two adjacent A~ with nonnegative square");
    }

    std::vector<Int> nonzero_ranks() const {
        std::vector<Int> r;
        for (const auto& E : seq_)
            if (E.e != 0) r.push_back(E.e);
        return r;
    }

    NormalFormTag classify_normal_form() const {
        const auto r = nonzero_ranks();
        if (r.size() == 3) {
            if (!is_markov(abs(r[0]), abs(r[1]), abs(r[2])))
                throw std::logic_error("three nonzero ranks violate the Markov equation");
            return NormalFormTag::markov_triple;
        }
        if (r.size() == 4) {
            for (const auto& x : r)
                if (abs(x) != 1) throw std::logic_error("four nonzero ranks that are not all +-1");
            return NormalFormTag::rank_one_zero;
        }
        throw std::logic_error("reduction ended with " + std::to_string(r.size()) + " nonzero ranks");
    }

    // Walks the Markov tree down by replacing the member of largest rank.
    void markov_descent() {
        for (;;) {
            const std::size_t t = zero_count();
            Int cur = 0;
            for (std::size_t p = t; p < seq_.size(); ++p) cur = max_abs(cur, seq_[p].e);
            if (cur == 1) return;
            std::optional<MutationStep> best;
            Int best_max;
            for (std::size_t p = t; p + 1 < seq_.size(); ++p)
                for (Direction d : {Direction::right, Direction::left}) {
                    const Sequence s = apply_step(L_, seq_, {p, d});
                    Int mx = 0;
                    for (std::size_t q = t; q < s.size(); ++q) mx = max_abs(mx, s[q].e);
                    if (mx < cur && (!best || mx < best_max)) {
                        best = MutationStep{p, d};
                        best_max = mx;
                    }
                }
            if (!best) throw std::logic_error("no mutation descends the Markov tree");
            step(*best);
            cert_.log.push_back("markov descent: max rank " + cur.get_str() + " -> " + best_max.get_str());
        }
    }

    // Each R_{(t-1, t)} turns the last rank-zero member into an object of rank +-1 (a smooth blow-up).
    void eliminate_zeros() {
        for (std::size_t t = zero_count(); t > 0; --t) {
            step({t - 1, Direction::right});
            if (abs(seq_[t].e) != 1) throw std::logic_error("eliminating a rank-zero member gave rank != +-1");
            cert_.log.push_back("blow-up at position " + std::to_string(t));
        }
    }

    void finish_shifts() {
        for (std::size_t p = 0; p < seq_.size(); ++p)
            if (seq_[p].e < 0) {
                seq_[p] = shift(L_, seq_[p]);
                cert_.shifted.push_back(p);
            }
    }

private:
    const IntersectionLattice& L_;
    Sequence seq_;
    ReductionCertificate cert_;
};

template <class Body>
ReductionCertificate run_reduction(const IntersectionLattice& L, const Sequence& seq, Body body) {
    Reducer r(L, seq);
    try {
        body(r);
    } catch (const BudgetExceeded& ex) {
        r.cert().budget_exceeded = true;
        r.cert().diagnostics.push_back(ex.what());
    }
    r.cert().final = r.seq();
    return r.cert();
}

}  // namespace detail

// Mutates until the rank-zero members lead and no adjacent nonzero pair is convex with a < 0.
inline ReductionCertificate convexity_reduce(const IntersectionLattice& L, const Sequence& seq) {
    return detail::run_reduction(L, seq, [](detail::Reducer& r) { r.convexity_reduce(); });
}

// Convexity reduction followed by identification of the Markov or rank-one form.
inline ReductionCertificate normal_form(const IntersectionLattice& L, const Sequence& seq) {
    return detail::run_reduction(L, seq, [](detail::Reducer& r) {
        r.convexity_reduce();
        r.cert().tag = r.classify_normal_form();
    });
}

// Mutations to a sequence of rank-one objects; negative ranks are shifted at the end.
inline ReductionCertificate to_rank_one(const IntersectionLattice& L, const Sequence& seq) {
    auto cert = detail::run_reduction(L, seq, [](detail::Reducer& r) {
        bool all_one = true;
        for (const auto& E : r.seq()) all_one = all_one && abs(E.e) == 1;
        if (!all_one) {
            r.convexity_reduce();
            if (r.classify_normal_form() == NormalFormTag::markov_triple) r.markov_descent();
            r.eliminate_zeros();
        }
        r.finish_shifts();
        r.cert().tag = NormalFormTag::rank_one;
    });
    if (cert.budget_exceeded) {
        cert.tag = NormalFormTag::none;
        return cert;
    }
    if (!validate_sequence(L, cert.final).ok()) throw std::logic_error("rank-one sequence is not exceptional");
    const ToricFan fan = fan_of_sequence(L, cert.final).fan;
    for (const auto& v : fan.volumes)
        if (v != 1) throw std::logic_error("fan of the rank-one sequence is not smooth");
    if (fan.size() != cert.final.size()) throw std::logic_error("rank-one fan has the wrong number of rays");
    return cert;
}

// Necessary numerical conditions for a cyclic strongly exceptional sequence.
struct CyclicStrongReport {
    bool window_nonnegative = true;  // chi(E_i, E_j) >= 0 and chi(E_j, E_i (x) omega^-1) >= 0, i < j
    std::optional<bool> fan_convex;  // det(w_k, w_{k+1}) >= 0; only for sequences without rank zero
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // some i < j with chi(E_i, E_j) > 0
    bool bound_inequality = true;    // e_i e_j K^2 >= chi(E_i, E_j) whenever chi(E_i, E_j) > 0
    Int k_squared;
    bool k_squared_positive = false;
    bool length_ok = false;          // n <= 11
    std::vector<std::string> messages;

    bool candidate() const {
        return window_nonnegative && fan_convex.value_or(true) && witness.has_value() && bound_inequality &&
               k_squared_positive && length_ok;
    }
};

inline CyclicStrongReport cyclic_strong_bound_check(const IntersectionLattice& L, const Sequence& seq) {
    CyclicStrongReport r;
    if (!validate_sequence(L, seq).ok()) throw DomainError("cyclic_strong_bound_check needs a valid sequence");
    const std::size_t n = seq.size();
    r.k_squared = pair(L, L.K, L.K);
    r.k_squared_positive = r.k_squared > 0;
    r.length_ok = n <= 11;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Int c = euler(L, seq[i], seq[j]);
            const Int c2 = euler(L, seq[j], serre_twist_inverse(L, seq[i]));
            if (c < 0 || c2 < 0) {
                r.window_nonnegative = false;
                r.messages.push_back("negative chi in the helix window at (" + std::to_string(i + 1) + ", " +
                                     std::to_string(j + 1) + ")");
            }
            if (c > 0) {
                if (!r.witness) r.witness = std::make_pair(i, j);
                if (seq[i].e * seq[j].e * r.k_squared < c) r.bound_inequality = false;
            }
        }
    bool has_zero = false;
    for (const auto& E : seq) has_zero = has_zero || E.e == 0;
    if (!has_zero) {
        const SequenceFan sf = fan_of_sequence(L, seq);
        const std::size_t m = sf.fan.size();
        bool convex = true;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t k1 = next_index(k, m);
            const V2 w0 = circumference(sf.fan, k, sf.system.ranks[k]).w;
            const V2 w1 = circumference(sf.fan, k1, sf.system.ranks[k1]).w;
            if (det(w0, w1) < 0) convex = false;
        }
        r.fan_convex = convex;
    }
    if (!r.k_squared_positive) r.messages.push_back("K^2 <= 0");
    if (!r.length_ok) r.messages.push_back("length exceeds 11");
    if (!r.bound_inequality) r.messages.push_back("e_i e_j K^2 < chi(E_i, E_j) for some pair");
    return r;
}

}  // namespace exseq
