#pragma once

#include "exseq/reduction.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace exseq::io {

using nlohmann::json;

// Malformed input files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
    return json(x.get_str());
}

inline Int int_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        try {
            return parse_int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw ParseError(std::string("expected an integer for ") + what);
}

inline json rat_to_json(const Rat& r) { return json(r.get_str()); }

inline Rat rat_from_json(const json& j, const char* what) {
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    if (j.is_number_integer()) return Rat(int_from_json(j, what));
    throw ParseError(std::string("expected a rational \"p/q\" for ") + what);
}

inline json vec_to_json(const IVec& v) {
    json a = json::array();
    for (const auto& x : v.c) a.push_back(int_to_json(x));
    return a;
}

inline json qvec_to_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v.c) a.push_back(rat_to_json(x));
    return a;
}

inline IVec vec_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("expected an array for ") + what);
    IVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = int_from_json(j[i], what);
    return v;
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// Surface description together with the lattice it defines.
struct Surface {
    json description;
    IntersectionLattice lattice;
};

inline Surface surface_from_json(const json& j) {
    Surface s;
    const json& model = field(j, "model");
    if (!model.is_string()) throw ParseError("surface model must be a string");
    const std::string m = model.get<std::string>();
    auto small_int = [](const json& v, const char* what) {
        const Int x = int_from_json(v, what);
        if (x < 0 || x > 1000) throw ParseError(std::string(what) + " out of range");
        return static_cast<int>(x.get_si());
    };
    if (m == "blowup_p2") {
        const int k = small_int(field(j, "points"), "points");
        s.lattice = make_blowup_p2(k);
        s.description = {{"model", m}, {"points", k}};
    } else if (m == "hirzebruch") {
        const int a = small_int(field(j, "a"), "a");
        s.lattice = make_hirzebruch(a);
        s.description = {{"model", m}, {"a", a}};
    } else if (m == "custom") {
        const json& g = field(j, "gram");
        if (!g.is_array() || g.empty()) throw ParseError("gram must be a nonempty matrix");
        IntersectionLattice L;
        L.rho = static_cast<int>(g.size());
        for (const auto& row : g) {
            IVec r = vec_from_json(row, "gram");
            if (r.size() != g.size()) throw ParseError("gram must be square");
            L.gram.push_back(r.c);
        }
        L.K = vec_from_json(field(j, "K"), "K");
        if (L.K.size() != g.size()) throw ParseError("K has the wrong length");
        s.lattice = L;
        json gj = json::array();
        for (const auto& row : L.gram) gj.push_back(vec_to_json(IVec(row)));
        s.description = {{"model", m}, {"gram", gj}, {"K", vec_to_json(L.K)}};
    } else {
        throw ParseError("unknown surface model \"" + m + "\"");
    }
    if (!validate_lattice(s.lattice).ok()) throw ParseError("surface lattice is not unimodular of signature (1, n-1) with K^2 = 12 - n");
    return s;
}

inline json class_to_json(const NumClass& N) {
    return {{"rank", int_to_json(N.e)}, {"c1", vec_to_json(N.c1)}, {"c2", int_to_json(N.c2)}};
}

inline NumClass class_from_json(const json& j, const IntersectionLattice& L) {
    NumClass N{int_from_json(field(j, "rank"), "rank"), vec_from_json(field(j, "c1"), "c1"),
               int_from_json(field(j, "c2"), "c2")};
    if (N.c1.size() != static_cast<std::size_t>(L.rho)) throw ParseError("c1 has the wrong length");
    return N;
}

inline json sequence_to_json(const Sequence& seq) {
    json a = json::array();
    for (const auto& E : seq) a.push_back(class_to_json(E));
    return a;
}

struct SequenceFile {
    Surface surface;
    Sequence objects;
};

inline SequenceFile sequence_file_from_json(const json& j) {
    SequenceFile f;
    f.surface = surface_from_json(field(j, "surface"));
    const json& objs = field(j, "objects");
    if (!objs.is_array()) throw ParseError("objects must be an array");
    for (const auto& o : objs) f.objects.push_back(class_from_json(o, f.surface.lattice));
    return f;
}

inline json sequence_file_to_json(const Surface& s, const Sequence& seq) {
    return {{"surface", s.description}, {"objects", sequence_to_json(seq)}};
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("malformed JSON: ") + ex.what());
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json diagnostics_to_json(const SequenceDiagnostics& d) {
    json chi = json::array();
    for (const auto& row : d.chi) {
        json r = json::array();
        for (const auto& x : row) r.push_back(int_to_json(x));
        chi.push_back(r);
    }
    json bad = json::array();
    for (auto [i, j] : d.nonvanishing) bad.push_back({{"i", i + 1}, {"j", j + 1}, {"chi", int_to_json(d.chi[i][j])}});
    json zeros = json::array();
    for (std::size_t k : d.rank_zero) zeros.push_back(k + 1);
    json deltas = json::array();
    for (const auto& x : d.deltas) deltas.push_back(x ? rat_to_json(*x) : json(nullptr));
    json degrees = json::array();
    for (const auto& x : d.anticanonical_degrees) degrees.push_back(int_to_json(x));
    return {{"ok", d.ok()},
            {"chi", chi},
            {"exceptional", d.exceptional},
            {"nonvanishing_pairs", bad},
            {"rank_zero_positions", zeros},
            {"rank_zero_bound", d.rank_zero_bound},
            {"rank_zero_orthogonal", d.rank_zero_orthogonal},
            {"full_length", d.full_length},
            {"anticanonical_degrees", degrees},
            {"deltas", deltas},
            {"rank_zero_conditions", d.rank_zero_conditions},
            {"messages", d.messages}};
}

inline json toric_system_to_json(const ToricSystem& ts) {
    json Es = json::array(), As = json::array(), ranks = json::array(), phi = json::array();
    for (const auto& E : ts.Es) Es.push_back(vec_to_json(E));
    for (const auto& A : ts.As) As.push_back(qvec_to_json(A));
    for (const auto& r : ts.ranks) ranks.push_back(int_to_json(r));
    for (auto p : ts.phi) phi.push_back(p + 1);
    return {{"E", Es}, {"A", As}, {"ranks", ranks}, {"phi", phi}};
}

inline std::string cone_type_name(const SingularityType& t) {
    if (t.smooth()) return "smooth";
    const HJExpansion h = hj_expand(t.v, t.k);
    if (t.t_form) return "T";
    if (is_T(h)) return "T-degenerate";
    return "other";
}

// Fan file: rays, multiplicities, cone records, winding and K^2.
inline json fan_to_json(const ToricFan& f) {
    json rays = json::array(), mult = json::array(), cones = json::array();
    for (const auto& r : f.rays) {
        rays.push_back({int_to_json(r.l.x), int_to_json(r.l.y)});
        mult.push_back(int_to_json(r.multiplicity));
    }
    for (const auto& t : classify_cones(f)) {
        json c = {{"volume", int_to_json(t.v)}, {"k", int_to_json(t.k)}, {"type", cone_type_name(t)},
                  {"smooth", t.smooth()}};
        if (t.t_form) c["e"] = int_to_json(t.e);
        cones.push_back(c);
    }
    return {{"rays", rays},
            {"multiplicities", mult},
            {"cones", cones},
            {"winding", int_to_json(f.winding)},
            {"k_squared", rat_to_json(k_squared(f))}};
}

inline ToricFan fan_from_json(const json& j) {
    const json& rays = field(j, "rays");
    if (!rays.is_array()) throw ParseError("rays must be an array");
    std::vector<V2> v;
    for (const auto& r : rays) {
        if (!r.is_array() || r.size() != 2) throw ParseError("each ray must be a pair");
        v.push_back({int_from_json(r[0], "ray"), int_from_json(r[1], "ray")});
    }
    std::vector<Int> mult;
    if (j.contains("multiplicities")) {
        const IVec m = vec_from_json(j.at("multiplicities"), "multiplicities");
        if (m.size() != v.size()) throw ParseError("multiplicities have the wrong length");
        mult = m.c;
    }
    return make_fan(v, mult);
}

inline json step_to_json(const MutationStep& s) {
    return {{"position", s.position + 1}, {"direction", to_string(s.direction)}};
}

inline MutationStep step_from_json(const json& j) {
    const Int p = int_from_json(field(j, "position"), "position");
    const json& d = field(j, "direction");
    if (p < 1 || !d.is_string()) throw ParseError("bad mutation step");
    const std::string ds = d.get<std::string>();
    if (ds != "left" && ds != "right") throw ParseError("direction must be left or right");
    return {static_cast<std::size_t>(p.get_ui() - 1), ds == "left" ? Direction::left : Direction::right};
}

inline json certificate_to_json(const Surface& s, const ReductionCertificate& c) {
    json steps = json::array(), shifted = json::array();
    for (const auto& st : c.steps) steps.push_back(step_to_json(st));
    for (auto p : c.shifted) shifted.push_back(p + 1);
    return {{"surface", s.description},
            {"initial", sequence_to_json(c.initial)},
            {"final", sequence_to_json(c.final)},
            {"steps", steps},
            {"shifted", shifted},
            {"tag", to_string(c.tag)},
            {"budget", c.budget},
            {"budget_exceeded", c.budget_exceeded},
            {"log", c.log},
            {"diagnostics", c.diagnostics},
            {"replay",
             "apply the steps in order to initial (1-based position p mutates members p and p+1), "
             "then replace each listed member of the result by its shift"}};
}

}  // namespace exseq::io
