#include "opm/cli.hpp"
#include "opm/massey.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace opm::cli {

using io::json;
using io::ordered_json;

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"validate",     "homology",          "ext",          "unit-massey",
                                            "torsion-massey", "cocycle-check", "cohomology-window", "minimal-check"};
    return c;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> f{"sagave-zp2",     "dugger-shipley-p2", "dugger-shipley-p3", "comm-qt-quotient",
                                            "comm-qt-free", "lie-qt-quotient",   "lie-qt-free"};
    return f;
}

namespace {

DegreeWindow parse_window(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw PreconditionError("--window expects lo..hi, got '" + text + "'");
    try {
        DegreeWindow W{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
        if (W.lo > W.hi) throw PreconditionError("--window: lo exceeds hi");
        return W;
    } catch (const std::logic_error&) {
        throw PreconditionError("--window expects integers, got '" + text + "'");
    }
}

std::string operad_name(const OperadPreset& O) {
    switch (O.kind) {
        case OperadKind::Initial: return "initial";
        case OperadKind::Associative: return "associative";
        case OperadKind::Commutative: return "commutative";
        case OperadKind::Lie: return "lie";
    }
    return "?";
}

ordered_json element_json(const DGAlgebra& A, int q, const Vec& v) {
    ordered_json out = ordered_json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out[A.labels(q)[i]] = io::to_json(v[i]);
    return out;
}

std::string slot_name(const Fragment& P, const CochainSlot& s) {
    static const char* names[] = {"1", "smu", "s2gamma"};
    std::string out = names[s.u];
    out += "(";
    for (std::size_t i = 0; i < s.inputs.size(); ++i) out += (i ? "," : "") + P.element(s.inputs[i]).label;
    return out + ")";
}

struct Context {
    RingSpec ring;
    OperadPreset operad;
    DGAlgebra algebra;
    std::optional<fixtures::FragmentFixture> fragment;
    json params = json::object();

    int param_int(const char* key) const {
        if (!params.contains(key)) throw PreconditionError(std::string("missing parameter '") + key + "'");
        if (!params.at(key).is_number_integer()) throw io::ParseError(std::string("/params/") + key, "expected an integer");
        return params.at(key).get<int>();
    }
    std::optional<int> param_opt(const char* key) const {
        if (!params.contains(key)) return std::nullopt;
        return param_int(key);
    }
    const fixtures::FragmentFixture& need_fragment() const {
        if (!fragment) throw PreconditionError("this command needs a minimal model fragment");
        return *fragment;
    }
};

struct Result {
    ordered_json results;
    int exit_code = Ok;
};

Result cmd_validate(const Context& c) {
    Report r = validate(c.algebra);
    return {ordered_json{{"report", io::to_json(r)}}, r.ok() ? Ok : Precondition};
}

Result cmd_homology(const Context& c) {
    HomologyData H = homology(c.algebra.complex());
    auto only = c.param_opt("degree");
    ordered_json groups = ordered_json::array();
    std::vector<int> outside;
    const DegreeWindow& W = c.algebra.window();
    for (int q = W.lo; q <= W.hi; ++q) {
        if (only && *only != q) continue;
        if (!H.available(q)) {
            outside.push_back(q);
            continue;
        }
        const HomologyGroup& g = H.at(q);
        ordered_json e;
        e["degree"] = q;
        e["module"] = io::to_json(g.module());
        ordered_json gens = ordered_json::array();
        for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(element_json(c.algebra, q, g.cycle_lift(i)));
        e["generators"] = gens;
        groups.push_back(e);
    }
    if (only && !W.contains(*only)) throw WindowError("degree " + std::to_string(*only) + " is outside the window");
    ordered_json out;
    out["groups"] = groups;
    out["undetermined_degrees"] = outside;
    return {out, only && !outside.empty() ? WindowInsufficient : Ok};
}

Result cmd_ext(const Context& c) {
    HomologyData H = homology(c.algebra.complex());
    int q = c.param_int("degree"), w = c.param_int("weight");
    int s = c.param_opt("shift").value_or(0);
    if (w < 0) throw PreconditionError("weight must be non-negative");
    for (int d : {q, q + s})
        if (!H.available(d)) throw WindowError("H_" + std::to_string(d) + " is outside the window");
    ExtGroup E = ext(H.at(q).module(), H.at(q + s).module(), std::size_t(w));
    ordered_json out;
    out["source"] = q;
    out["target"] = q + s;
    out["weight"] = w;
    out["ext"] = io::to_json(E.module());
    return {out, Ok};
}

Result cmd_unit_massey(const Context& c) {
    auto only = c.param_opt("degree");
    ordered_json classes = ordered_json::array();
    bool any = false;
    for (const ExtensionClass2& e : unit_universal_massey(c.algebra.complex())) {
        if (only && *only != e.q) continue;
        ordered_json j;
        j["degree"] = e.q;
        j["ext"] = io::to_json(e.ext.module());
        j["class"] = io::to_json(e.value);
        j["nonzero"] = !e.is_zero();
        any = any || !e.is_zero();
        classes.push_back(j);
    }
    if (only && classes.empty())
        throw WindowError("the window must contain degrees " + std::to_string(*only - 1) + ".." +
                          std::to_string(*only + 2));
    ordered_json out;
    out["classes"] = classes;
    out["verdict"] = any ? "nonzero" : "zero";
    return {out, Ok};
}

Result cmd_torsion_massey(const Context& c) {
    HomologyAlgebra H = homology_algebra(c.algebra);
    const RingSpec& R = c.ring;
    MasseyInput in;
    std::string op = c.params.value("op", std::string("mu"));
    if (op == "ell" && c.operad.kind != OperadKind::Lie) op = "commutator";
    in.op = OpSpec::parse(op);
    if (!c.params.contains("t") || !c.params.at("t").is_array()) throw PreconditionError("missing parameter 't'");
    const json& t = c.params.at("t");
    for (std::size_t i = 0; i < t.size(); ++i) in.t.push_back(io::scalar_from_json(R, t[i], "/params/t/" + std::to_string(i)));
    if (in.t.size() == 1) in.t.push_back(-in.t[0]);
    if (!c.params.contains("classes") || !c.params.at("classes").is_array())
        throw PreconditionError("missing parameter 'classes'");
    for (const json& x : c.params.at("classes")) {
        if (!x.is_string()) throw io::ParseError("/params/classes", "classes are written as strings");
        int q = 0;
        Vec cycle = io::element_from_text(c.algebra, x.get<std::string>(), q);
        if (!H.available(q)) throw WindowError("H_" + std::to_string(q) + " is outside the window");
        if (!is_zero_vec(c.algebra.d(q, cycle)))
            throw PreconditionError("'" + x.get<std::string>() + "' is not a cycle");
        in.degrees.push_back(q);
        in.classes.push_back(H.at(q).project(cycle));
    }
    MasseyCoset m = torsion_massey(H, in);
    auto reduced = [&](const Vec& v) { return H.at(m.degree).project(H.at(m.degree).lift(v)); };
    ordered_json out;
    out["op"] = in.op.to_string();
    out["t"] = io::to_json(in.t);
    out["degree"] = m.degree;
    out["representative"] = io::to_json(reduced(m.representative));
    out["cycle"] = element_json(c.algebra, m.degree, m.cycle);
    ordered_json gens = ordered_json::array();
    for (std::size_t j = 0; j < m.indeterminacy.generators.cols(); ++j) {
        Vec g = reduced(m.indeterminacy.generators.column(j));
        if (!is_zero_vec(g)) gens.push_back(io::to_json(g));
    }
    out["indeterminacy"] = {{"generators", gens},
                            {"complete", m.indeterminacy.complete},
                            {"full", m.indeterminacy.is_full()}};
    Vanishing v = m.vanishing();
    out["verdict"] = to_string(v);
    return {out, v == Vanishing::WindowInsufficient ? WindowInsufficient : Ok};
}

HorizontalResolution resolution_for(const Context& c, int hmax) {
    if (c.fragment) return verified_resolution(c.fragment->morphism, c.fragment->model);
    if (c.operad.kind != OperadKind::Initial)
        throw PreconditionError("a minimal model fragment is required for the " + operad_name(c.operad) + " operad");
    return resolve_initial(homology_algebra(c.algebra), std::max(hmax, 2), false);
}

Result cmd_cocycle_check(const Context& c) {
    const auto& F = c.need_fragment();
    HorizontalResolution R = verified_resolution(F.morphism, F.model);
    Cochain m = universal_massey_cocycle(R);
    CochainSpace C2 = cochain_space(R, 2, -1), C3 = cochain_space(R, 3, -1);
    CochainDifferential D = cochain_differential(R, C2, C3);
    Vec dm = D.matrix.apply(m.values);
    std::size_t checked = 0, skipped = 0;
    bool cocycle = true;
    for (std::size_t o = 0; o < C3.slots.size(); ++o) {
        if (D.inexact[o]) {
            ++skipped;
            continue;
        }
        ++checked;
        Vec part(dm.begin() + long(C3.offset[o]), dm.begin() + long(C3.offset[o] + C3.rank[o]));
        if (!R.H.at(C3.slots[o].degree).module().contains(part)) cocycle = false;
    }
    ordered_json comps = ordered_json::array();
    for (std::size_t k = 0; k < C2.slots.size(); ++k) {
        Vec part(m.values.begin() + long(C2.offset[k]), m.values.begin() + long(C2.offset[k] + C2.rank[k]));
        if (R.H.at(C2.slots[k].degree).module().contains(part)) continue;
        comps.push_back({{"slot", slot_name(R.P, C2.slots[k])}, {"degree", C2.slots[k].degree}, {"value", io::to_json(part)}});
    }
    CoboundaryResult b = is_coboundary(R, m);
    ordered_json out;
    out["components"] = comps;
    out["cocycle"] = cocycle;
    out["rows_checked"] = checked;
    out["rows_outside_window"] = skipped;
    out["coboundary"] = to_string(b.verdict);
    out["verdict"] = cocycle ? "cocycle" : "not-a-cocycle";
    return {out, cocycle ? Ok : Failure};
}

Result cmd_cohomology_window(const Context& c) {
    int w = c.param_int("weight"), t = c.param_opt("shift").value_or(0);
    if (w < 0) throw PreconditionError("weight must be non-negative");
    HorizontalResolution R = resolution_for(c, w + 1);
    CohomologyWindowResult H = cohomology_window(R, w, t);
    ordered_json out;
    out["weight"] = w;
    out["shift"] = t;
    out["cohomology"] = io::to_json(H.module());
    out["complete"] = H.complete;
    out["gaps"] = H.gaps;
    return {out, H.complete ? Ok : WindowInsufficient};
}

Result cmd_minimal_check(const Context& c) {
    const auto& F = c.need_fragment();
    Report a = verify_minimal_fragment(F.model);
    Report b = verify_infinity_fragment(F.morphism, F.model);
    ordered_json out;
    out["fragment"] = io::to_json(a);
    out["morphism"] = io::to_json(b);
    bool ok = a.ok() && b.ok();
    if (ok) {
        Report r = verify_horizontal_resolution(induced_horizontal_resolution(F.morphism, F.model));
        out["resolution"] = io::to_json(r);
        ok = r.ok();
    }
    out["verdict"] = ok ? "verified" : "failed";
    return {out, ok ? Ok : Precondition};
}

// YAML-like rendering of a report.
void render(std::ostringstream& os, const ordered_json& j, int indent) {
    const std::string pad(std::size_t(indent), ' ');
    auto inline_scalar = [](const ordered_json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    auto flat = [&](const ordered_json& v) {
        if (!v.is_array()) return false;
        for (const auto& x : v)
            if (x.is_structured()) return false;
        return true;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const ordered_json& v = it.value();
        std::string head = j.is_object() ? pad + it.key() + ":" : pad + "-";
        if (!v.is_structured()) {
            os << head << " " << inline_scalar(v) << "\n";
        } else if (flat(v)) {
            os << head << " [";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << inline_scalar(v[i]);
            os << "]\n";
        } else if (v.empty()) {
            os << head << (v.is_object() ? " {}" : " []") << "\n";
        } else if (v.is_object() && std::all_of(v.begin(), v.end(), [](const ordered_json& x) { return !x.is_structured(); }) &&
                   v.size() <= 4 && (!j.is_object() || it.key() != "report")) {
            os << head << " {";
            bool first = true;
            for (auto jt = v.begin(); jt != v.end(); ++jt) {
                os << (first ? "" : ", ") << jt.key() << ": " << inline_scalar(jt.value());
                first = false;
            }
            os << "}\n";
        } else if (j.is_array() && v.is_object()) {
            std::ostringstream inner;
            render(inner, v, indent + 2);
            std::string text = inner.str();
            os << pad << "- " << text.substr(std::size_t(indent) + 2);
        } else {
            os << head << "\n";
            render(os, v, indent + 2);
        }
    }
}

std::string emit(const ordered_json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::ostringstream os;
    render(os, report, 0);
    return os.str();
}

void only_job_keys(const json& job) {
    static const std::set<std::string> allowed{"command", "ring", "operad", "algebra", "presentation", "fragment", "params"};
    if (!job.is_object()) throw io::ParseError("", "a job is a JSON object");
    for (auto it = job.begin(); it != job.end(); ++it)
        if (!allowed.count(it.key())) throw io::ParseError("/" + it.key(), "unknown field");
    if (job.contains("params")) {
        static const std::set<std::string> params{"degree", "weight", "shift", "op", "t", "classes"};
        if (!job.at("params").is_object()) throw io::ParseError("/params", "expected an object");
        for (auto it = job.at("params").begin(); it != job.at("params").end(); ++it)
            if (!params.count(it.key())) throw io::ParseError("/params/" + it.key(), "unknown field");
    }
}

}  // namespace

ordered_json fixture_job(const std::string& name, const std::optional<std::string>& window) {
    std::optional<DegreeWindow> W;
    if (window) W = parse_window(*window);
    ordered_json job;
    auto put = [&](const DGAlgebra& A) {
        job["ring"] = A.ring().name();
        job["operad"] = operad_name(A.operad());
        job["algebra"] = io::algebra_to_json(A);
    };
    if (name == "sagave-zp2") {
        if (W) throw PreconditionError("the sagave-zp2 fixture has a fixed window");
        auto F = fixtures::sagave_fragment();
        put(F.morphism.target);
        job["fragment"] = io::fragment_to_json(F);
    } else if (name == "dugger-shipley-p2" || name == "dugger-shipley-p3") {
        long p = name.back() - '0';
        DegreeWindow V = W.value_or(DegreeWindow{-2, 4});
        auto F = fixtures::dugger_shipley_fragment(p, V);
        put(F.morphism.target);
        job["fragment"] = io::fragment_to_json(F);
    } else if (name == "comm-qt-quotient" || name == "lie-qt-quotient") {
        if (W) throw PreconditionError("the quotient fixtures have a fixed window");
        auto F = name[0] == 'c' ? fixtures::comm_qt_fragment() : fixtures::lie_qt_fragment();
        put(F.morphism.target);
        job["fragment"] = io::fragment_to_json(F);
    } else if (name == "comm-qt-free" || name == "lie-qt-free") {
        int top = W ? W->hi : 6;
        if (W && W->lo != 0) throw PreconditionError("the free fixtures start in degree 0");
        put(realize(name[0] == 'c' ? fixtures::comm_qt_presentation(false, top)
                                   : fixtures::lie_qt_presentation(false, top)));
    } else {
        throw PreconditionError("unknown fixture '" + name + "'");
    }
    return job;
}

Outcome run_job(const json& job, const std::string& format, bool timing) {
    if (format != "text" && format != "json") return {Precondition, "error: unknown format '" + format + "'\n"};
    auto start = std::chrono::steady_clock::now();
    ordered_json report;
    int code = Ok;
    try {
        only_job_keys(job);
        if (!job.contains("command") || !job.at("command").is_string()) throw io::ParseError("/command", "missing command");
        std::string command = job.at("command").get<std::string>();
        report["command"] = command;
        if (std::find(commands().begin(), commands().end(), command) == commands().end())
            throw io::ParseError("/command", "unknown command '" + command + "'");
        Context c;
        if (!job.contains("ring") || !job.at("ring").is_string()) throw io::ParseError("/ring", "missing ring");
        try {
            c.ring = RingSpec::parse(job.at("ring").get<std::string>());
        } catch (const MathError& e) {
            throw io::ParseError("/ring", e.what());
        }
        std::string operad = job.contains("operad") ? job.at("operad").get<std::string>() : "initial";
        try {
            c.operad = OperadPreset::parse(operad);
        } catch (const MathError& e) {
            throw io::ParseError("/operad", e.what());
        }
        report["ring"] = c.ring.name();
        report["operad"] = operad_name(c.operad);
        if (job.contains("params")) c.params = job.at("params");
        report["params"] = c.params;
        if (job.contains("algebra") == job.contains("presentation"))
            throw io::ParseError("", "give exactly one of 'algebra' and 'presentation'");
        if (job.contains("algebra")) {
            c.algebra = io::algebra_from_json(c.ring, c.operad, job.at("algebra"), "/algebra");
        } else {
            AlgebraPresentation P = io::presentation_from_json(c.ring, c.operad, job.at("presentation"), "/presentation");
            try {
                c.algebra = realize(P);
            } catch (const MathError& e) {
                throw io::ParseError("/presentation", e.what());
            }
        }
        if (job.contains("fragment")) c.fragment = io::fragment_from_json(c.algebra, job.at("fragment"), "/fragment");

        Result r;
        if (command == "validate") r = cmd_validate(c);
        else if (command == "homology") r = cmd_homology(c);
        else if (command == "ext") r = cmd_ext(c);
        else if (command == "unit-massey") r = cmd_unit_massey(c);
        else if (command == "torsion-massey") r = cmd_torsion_massey(c);
        else if (command == "cocycle-check") r = cmd_cocycle_check(c);
        else if (command == "cohomology-window") r = cmd_cohomology_window(c);
        else r = cmd_minimal_check(c);
        report["results"] = r.results;
        code = r.exit_code;
    } catch (const WindowError& e) {
        report["error"] = {{"kind", "window-insufficient"}, {"message", e.what()}};
        code = WindowInsufficient;
    } catch (const io::ParseError& e) {
        report["error"] = {{"kind", "parse"}, {"path", e.path().empty() ? "/" : e.path()}, {"message", e.what()}};
        code = Precondition;
    } catch (const PreconditionError& e) {
        report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        code = Precondition;
    } catch (const MathError& e) {
        report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        code = Precondition;
    } catch (const json::exception& e) {
        report["error"] = {{"kind", "parse"}, {"message", e.what()}};
        code = Precondition;
    }
    report["exit_code"] = code;
    if (timing)
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return {code, emit(report, format)};
}

Outcome run(const Options& o) {
    json job;
    try {
        if (o.job) {
            try {
                job = json::parse(*o.job);
            } catch (const json::parse_error& e) {
                return {Precondition, std::string("error: job document: ") + e.what() + "\n"};
            }
            if (!job.is_object()) return {Precondition, "error: a job is a JSON object\n"};
        }
        if (o.fixture) {
            if (o.job) return {Precondition, "error: give either --fixture or a job document, not both\n"};
            job = json::parse(fixture_job(*o.fixture, o.window).dump());
        } else if (o.window) {
            if (job.contains("presentation")) {
                DegreeWindow W = parse_window(*o.window);
                job["presentation"]["window"] = {W.lo, W.hi};
            } else {
                return {Precondition, "error: --window applies to fixtures and presentations\n"};
            }
        }
    } catch (const MathError& e) {
        return {Precondition, std::string("error: ") + e.what() + "\n"};
    }
    if (!o.command.empty()) job["command"] = o.command;
    if (o.ring) job["ring"] = *o.ring;
    if (o.operad) job["operad"] = *o.operad;
    json& p = job["params"];
    if (p.is_null()) p = json::object();
    if (o.degree) p["degree"] = *o.degree;
    if (o.weight) p["weight"] = *o.weight;
    if (o.shift) p["shift"] = *o.shift;
    if (o.op) p["op"] = *o.op;
    if (!o.t.empty()) p["t"] = o.t;
    if (!o.classes.empty()) p["classes"] = o.classes;
    return run_job(job, o.format, o.timing);
}

}  // namespace opm::cli
