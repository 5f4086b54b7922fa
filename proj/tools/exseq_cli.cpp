#include "exseq/exseq.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace exseq;
using io::json;

namespace {

enum Exit : int { ok = 0, domain_failure = 1, parse_failure = 2, budget_exceeded = 3 };

void emit(const json& j) { std::cout << io::dump(j); }

io::SequenceFile load_sequence(const std::string& path) { return io::sequence_file_from_json(io::load_json(path)); }

// Domain failure unless the sequence passes every check.
void require_valid(const io::SequenceFile& f) {
    const auto d = validate_sequence(f.surface.lattice, f.objects);
    if (!d.ok()) {
        emit({{"error", "sequence is not numerically exceptional"}, {"diagnostics", io::diagnostics_to_json(d)}});
        throw DomainError("invalid sequence");
    }
}

int cmd_validate(const std::string& path) {
    const auto f = load_sequence(path);
    const auto d = validate_sequence(f.surface.lattice, f.objects);
    emit(io::diagnostics_to_json(d));
    return d.ok() ? ok : domain_failure;
}

int cmd_mutate(const std::string& path, long pos, const std::string& dir) {
    const auto f = load_sequence(path);
    require_valid(f);
    const std::size_t n = f.objects.size();
    if (pos < 1 || static_cast<std::size_t>(pos) >= n)
        throw DomainError("position must lie in 1.." + std::to_string(n > 0 ? n - 1 : 0));
    const MutationStep step{static_cast<std::size_t>(pos - 1), dir == "left" ? Direction::left : Direction::right};
    const Sequence out = mutate_seq(f.surface.lattice, f.objects, step);
    json j = io::sequence_file_to_json(f.surface, out);
    json ranks = json::array();
    for (const auto& E : out) ranks.push_back(io::int_to_json(E.e));
    j["ranks"] = ranks;
    try {
        j["toric_system"] = io::toric_system_to_json(extract(f.surface.lattice, out));
    } catch (const DomainError& ex) {
        j["toric_system"] = nullptr;
        j["toric_system_error"] = ex.what();
    }
    emit(j);
    return ok;
}

int cmd_fan(const std::string& path, const std::string& svg, unsigned jobs) {
    const auto f = load_sequence(path);
    require_valid(f);
    const ToricFan fan = fan_of_sequence(f.surface.lattice, f.objects, jobs).fan;
    if (!svg.empty()) {
        std::ofstream out(svg);
        if (!out) throw DomainError("cannot write " + svg);
        out << fan_svg(fan);
    }
    emit(io::fan_to_json(fan));
    return ok;
}

int cmd_reduce(const std::string& path, const std::string& target) {
    const auto f = load_sequence(path);
    require_valid(f);
    const IntersectionLattice& L = f.surface.lattice;
    const ReductionCertificate c = target == "rank-one" ? to_rank_one(L, f.objects) : normal_form(L, f.objects);
    json j = io::certificate_to_json(f.surface, c);
    if (!c.budget_exceeded && target == "rank-one") j["fan"] = io::fan_to_json(fan_of_sequence(L, c.final).fan);
    emit(j);
    return c.budget_exceeded ? budget_exceeded : ok;
}

int cmd_markov(long bound, unsigned jobs) {
    if (bound < 1) throw DomainError("--max must be at least 1");
    const auto triples = markov_enumerate(Int(bound), jobs);
    json t = json::array();
    for (const auto& m : triples) t.push_back({io::int_to_json(m.e), io::int_to_json(m.f), io::int_to_json(m.g)});
    emit({{"bound", bound}, {"count", triples.size()}, {"triples", t}});
    return ok;
}

// The cone (1,0), (-k,v) completed by (0,-1) so that the resolution ledger can be measured.
int cmd_resolve(const std::string& vs, const std::string& ks) {
    Int v, k;
    try {
        v = parse_int(vs);
        k = parse_int(ks);
    } catch (const std::invalid_argument&) {
        throw io::ParseError("--v and --k must be integers");
    }
    if (v < 2 || k < 1 || k >= v || gcd_int(v, k) != 1) throw DomainError("need 0 < k < v with gcd(v, k) = 1");
    const SingularityType t = classify_cone(V2{1, 0}, V2{-k, v});
    const HJExpansion h = hj_expand(v, k);
    const Resolution res = resolve_fan(make_fan({V2{1, 0}, V2{-k, v}, V2{0, -1}}));
    json steps = json::array();
    Rat drop = 0;
    bool ledger = true;
    for (const auto& s : res.cones.front().steps) {
        steps.push_back({{"ray", {io::int_to_json(s.xi.x), io::int_to_json(s.xi.y)}},
                         {"volume", io::int_to_json(s.volume)},
                         {"drop_formula", io::rat_to_json(s.drop_formula)},
                         {"drop_measured", io::rat_to_json(s.drop_measured)},
                         {"relation_ok", s.relation_ok}});
        drop += s.drop_formula;
        ledger = ledger && s.relation_ok && s.drop_formula == s.drop_measured;
    }
    json bs = json::array();
    for (const auto& b : h.bs) bs.push_back(io::int_to_json(b));
    json j = {{"v", io::int_to_json(v)},
              {"k", io::int_to_json(k)},
              {"hj", bs},
              {"is_T", is_T(h)},
              {"t_form", t.t_form},
              {"length", io::int_to_json(circumference_length(v, k))},
              {"steps", steps},
              {"k_squared_drop", io::rat_to_json(drop)},
              {"ledger_ok", ledger}};
    if (t.t_form) j["e"] = io::int_to_json(t.e);
    emit(j);
    return ok;
}

int cmd_ksquare(const std::string& path, unsigned jobs) {
    const json j = io::load_json(path);
    ToricFan fan;
    if (j.is_object() && j.contains("rays")) {
        fan = io::fan_from_json(j);
    } else {
        const auto f = io::sequence_file_from_json(j);
        require_valid(f);
        fan = fan_of_sequence(f.surface.lattice, f.objects, jobs).fan;
    }
    emit({{"k_squared", io::rat_to_json(k_squared(fan))}});
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerically exceptional sequences on rational surfaces and their toric fans"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for seed search and enumeration")->check(CLI::Range(1u, 256u));

    std::string file, svg, dir = "right", target = "normal-form", vs, ks;
    long pos = 0, bound = 0;

    auto* validate = app.add_subcommand("validate", "Check a sequence file");
    validate->add_option("file", file, "Sequence file")->required();

    auto* mutate = app.add_subcommand("mutate", "Mutate one adjacent pair");
    mutate->add_option("file", file, "Sequence file")->required();
    mutate->add_option("--pos", pos, "1-based position of the pair's first member")->required();
    mutate->add_option("--dir", dir, "left or right")->check(CLI::IsMember({"left", "right"}));

    auto* fan = app.add_subcommand("fan", "Toric fan of a sequence");
    fan->add_option("file", file, "Sequence file")->required();
    fan->add_option("--svg", svg, "Write a picture of the fan");

    auto* reduce = app.add_subcommand("reduce", "Reduce a sequence by mutations");
    reduce->add_option("file", file, "Sequence file")->required();
    reduce->add_option("--target", target, "normal-form or rank-one")
        ->check(CLI::IsMember({"normal-form", "rank-one"}));

    auto* markov = app.add_subcommand("markov", "Markov triples up to a bound");
    markov->add_option("--max", bound, "Largest entry")->required();

    auto* resolve = app.add_subcommand("resolve", "Minimal resolution of a cyclic quotient singularity");
    resolve->add_option("--v", vs, "Order")->required();
    resolve->add_option("--k", ks, "Weight")->required();

    auto* ksquare = app.add_subcommand("ksquare", "Exact K^2 of a fan file or sequence file");
    ksquare->add_option("file", file, "Fan or sequence file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& s) {
        return app.exit(s);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_failure;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*mutate) return cmd_mutate(file, pos, dir);
        if (*fan) return cmd_fan(file, svg, jobs);
        if (*reduce) return cmd_reduce(file, target);
        if (*markov) return cmd_markov(bound, jobs);
        if (*resolve) return cmd_resolve(vs, ks);
        if (*ksquare) return cmd_ksquare(file, jobs);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse_failure;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return budget_exceeded;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return domain_failure;
    }
    return parse_failure;
}
