#include "blf/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "blf/alfforge.hpp"
#include "blf/concave.hpp"
#include "blf/grid.hpp"
#include "blf/kirby.hpp"
#include "blf/matchglue.hpp"
#include "blf/openbook.hpp"

namespace blf {

Stage parse_stage(const std::string& name) {
    if (name == "invariants") return Stage::Invariants;
    if (name == "alf") return Stage::Alf;
    if (name == "minimize") return Stage::Minimize;
    if (name == "concave") return Stage::Concave;
    if (name == "match") return Stage::Match;
    if (name == "palfify") return Stage::Palfify;
    if (name == "blf") return Stage::Blf;
    throw ParseError("unknown stage '" + name + "'");
}

const char* to_string(Stage s) {
    switch (s) {
        case Stage::Invariants: return "invariants";
        case Stage::Alf: return "alf";
        case Stage::Minimize: return "minimize";
        case Stage::Concave: return "concave";
        case Stage::Match: return "match";
        case Stage::Palfify: return "palfify";
        case Stage::Blf: return "blf";
    }
    return "?";
}

ConcaveSpec parse_concave_spec(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("concave spec '" + text + "' needs '<kind>:<genus>'");
    ConcaveSpec s;
    s.kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    const auto number = [&text](const std::string& tok) {
        try {
            std::size_t used = 0;
            const std::int64_t v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (...) {
            throw ParseError("concave spec '" + text + "' has a bad number '" + tok + "'");
        }
    };
    const std::size_t comma = args.find(',');
    if (s.kind == "product") {
        if (comma != std::string::npos)
            throw ParseError("concave spec 'product' takes a single genus");
        s.genus = number(args);
    } else if (s.kind == "pencil") {
        if (comma == std::string::npos)
            throw ParseError("concave spec 'pencil' needs '<genus>,<base points>'");
        s.genus = number(args.substr(0, comma));
        s.euler = number(args.substr(comma + 1));
    } else {
        throw ParseError("unknown concave kind '" + s.kind + "'");
    }
    return s;
}

namespace {

GridDiagram load_diagram(const std::string& path) {
    if (path.empty()) throw ParseError("no input path given");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    return parse_diagram(in);
}

AlmostSteinHandlebody carve_all(AlmostSteinHandlebody h) {
    for (bool again = true; again;) {
        again = false;
        for (Index k = 0; k < static_cast<Index>(h.handles.size()); ++k)
            if (h.handles[k].defective && !h.handles[k].carved) {
                h = carve_meridian_disk(h, k).handlebody;
                again = true;
                break;
            }
    }
    return h;
}

ConcaveFibration build_concave(const ConcaveSpec& s) {
    if (s.kind == "product") return concave_product_blf(s.genus);
    return concave_pencil_bundle(s.genus, s.euler);
}

std::string join(const std::vector<std::string>& items) {
    if (items.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out;
}

std::string vec_str(const VecZ& v) {
    if (v.size() == 0) return "-";
    std::string out;
    for (Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v(i));
    return out;
}

std::string torsion_str(const std::vector<std::int64_t>& t) {
    if (t.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
    return out;
}

std::string d3_str(bool defined, const Rational& d3) {
    return defined ? d3.str() : "undefined";
}

std::string word_str(const TwistWord& w) {
    std::vector<std::string> letters;
    letters.reserve(w.letters.size());
    for (const TwistLetter& l : w.letters)
        letters.push_back(l.curve.id + (l.chirality == Chirality::Right ? ":R" : ":L"));
    return join(letters);
}

std::string side_str(const SideInvariants& s) {
    return "c1=" + vec_str(s.chern) + " d3=" + d3_str(s.d3_defined, s.d3);
}

std::string concave_header(const ConcaveSpec& s) {
    std::string out = "kind=" + s.kind + " genus=" + std::to_string(s.genus);
    if (s.kind == "pencil") out += " base=" + std::to_string(s.euler);
    return out;
}

// Flat key=value rows in a fixed order; the text rendering groups them by hand.
struct Rows {
    std::ostringstream out;
    void add(const std::string& k, const std::string& v) { out << k << "=" << v << "\n"; }
    void add(const std::string& k, std::int64_t v) { add(k, std::to_string(v)); }
};

void concave_spec_rows(Rows& r, const ConcaveSpec& s) {
    r.add("kind", s.kind);
    r.add("genus", s.genus);
    if (s.kind == "pencil") r.add("base", s.euler);
}

std::string report_invariants(const PipelineConfig& cfg) {
    const AlmostSteinHandlebody h = normalize_almost_stein(build_handles(load_diagram(cfg.input)));
    const InvariantRecord inv = compute_invariants(h);
    const bool parity = chern_parity_ok(h);

    if (cfg.format == ReportFormat::Structured) {
        Rows r;
        r.add("stage", "invariants");
        r.add("input", cfg.input);
        r.add("handles", static_cast<std::int64_t>(h.handles.size()));
        r.add("dotted", static_cast<std::int64_t>(h.dotteds.size()));
        r.add("three_handles", h.three_handles);
        r.add("four_handles", h.four_handles);
        r.add("chi", inv.chi);
        r.add("sigma", inv.sigma);
        r.add("q", inv.q);
        r.add("boundary_rank", inv.h1_boundary.rank);
        r.add("boundary_torsion", torsion_str(inv.h1_boundary.torsion));
        r.add("c1", vec_str(inv.c1));
        r.add("parity", parity ? "even" : "odd");
        r.add("d3", d3_str(inv.d3_defined, inv.d3));
        return r.out.str();
    }
    std::ostringstream t;
    t << "invariants input=" << cfg.input << "\n";
    t << "handles=" << h.handles.size() << " dotted=" << h.dotteds.size()
      << " three=" << h.three_handles << " four=" << h.four_handles << "\n";
    t << "chi=" << inv.chi << " sigma=" << inv.sigma << " q=" << inv.q << "\n";
    t << "boundary rank=" << inv.h1_boundary.rank
      << " torsion=" << torsion_str(inv.h1_boundary.torsion) << "\n";
    t << "c1=" << vec_str(inv.c1) << " parity=" << (parity ? "even" : "odd") << "\n";
    t << "d3=" << d3_str(inv.d3_defined, inv.d3) << "\n";
    return t.str();
}

std::string report_alf(const PipelineConfig& cfg, const char* name, const ALFRecord& a) {
    if (cfg.format == ReportFormat::Structured) {
        Rows r;
        r.add("stage", name);
        r.add("input", cfg.input);
        r.add("letters", static_cast<std::int64_t>(a.vanishing_cycles.letters.size()));
        r.add("achiral", a.achiral_count);
        r.add("carved", static_cast<std::int64_t>(a.carved_sections.size()));
        r.add("carved_sections", join(a.carved_sections));
        r.add("normal_form", join(a.normal_form_handles));
        r.add("destabilized", static_cast<std::int64_t>(a.destabilized.size()));
        r.add("word", word_str(a.vanishing_cycles));
        r.add("fiber_genus", a.fiber.genus);
        r.add("fiber_boundary", a.fiber.boundary_count);
        r.add("fiber_rank", a.fiber.h1_rank());
        for (const std::string& n : a.notes) r.add("note", n);
        return r.out.str();
    }
    std::ostringstream t;
    t << name << " input=" << cfg.input << "\n";
    t << "letters=" << a.vanishing_cycles.letters.size() << " achiral=" << a.achiral_count
      << " carved=" << a.carved_sections.size() << " destabilized=" << a.destabilized.size()
      << "\n";
    t << "carved_sections=" << join(a.carved_sections)
      << " normal_form=" << join(a.normal_form_handles) << "\n";
    t << serialize_open_book(a.boundary);
    for (const std::string& n : a.notes) t << "note " << n << "\n";
    return t.str();
}

ALFRecord alf_chain(const PipelineConfig& cfg) {
    return build_alf(carve_all(normalize_almost_stein(build_handles(load_diagram(cfg.input)))));
}

std::string report_concave(const PipelineConfig& cfg) {
    load_diagram(cfg.input);  // the input must be readable even when unused
    const ConcaveSpec& spec = *cfg.concave;
    const ConcaveFibration c = build_concave(spec);

    if (cfg.format == ReportFormat::Structured) {
        Rows r;
        r.add("stage", "concave");
        r.add("input", cfg.input);
        concave_spec_rows(r, spec);
        r.add("folds", c.fold_circles);
        r.add("lefschetz", c.lefschetz);
        r.add("achiral", c.achiral);
        r.add("base_points", c.base_points);
        r.add("round_handles", c.round_handles);
        r.add("stabs_positive", c.stabs_positive);
        r.add("stabs_negative", c.stabs_negative);
        r.add("stabs_no_achiral", c.stabs_no_achiral);
        r.add("boundary_genus", c.boundary.page.genus);
        r.add("boundary_circles", c.boundary.page.boundary_count);
        r.add("boundary_rank", c.boundary.page.h1_rank());
        r.add("word", word_str(c.boundary.monodromy));
        for (const std::string& n : c.notes) r.add("note", n);
        return r.out.str();
    }
    std::ostringstream t;
    t << "concave input=" << cfg.input << " " << concave_header(spec) << "\n";
    t << "round_handles=" << c.round_handles << " stabs_positive=" << c.stabs_positive
      << " stabs_negative=" << c.stabs_negative << " stabs_no_achiral=" << c.stabs_no_achiral
      << "\n";
    t << serialize_concave(c);
    return t.str();
}

std::string report_match(const PipelineConfig& cfg) {
    const HandleDecomposition hd = build_handles(load_diagram(cfg.input));
    const AlmostSteinHandlebody convex = normalize_almost_stein(hd);
    const ConcaveSpec& spec = *cfg.concave;
    const ConcaveFibration conc = build_concave(spec);

    const SideInvariants cv = side_invariants(convex);
    const SideInvariants cs = concave_match_side(conc, cv);
    const MatchPlan plan0 = match_plan(cv, cs, check_no_two_torsion(hd));
    const MatchOutcome m = execute_match(convex, conc);

    if (cfg.format == ReportFormat::Structured) {
        Rows r;
        r.add("stage", "match");
        r.add("input", cfg.input);
        concave_spec_rows(r, spec);
        r.add("convex_c1", vec_str(cv.chern));
        r.add("convex_d3", d3_str(cv.d3_defined, cv.d3));
        r.add("concave_c1", vec_str(cs.chern));
        r.add("concave_d3", d3_str(cs.d3_defined, cs.d3));
        r.add("finger_pairs", static_cast<std::int64_t>(m.plan.finger_pairs.size()));
        for (const FingerPairStep& p : m.plan.finger_pairs)
            r.add("pair", std::to_string(p.component) + ":" + std::to_string(p.direction));
        r.add("convex_neg_stabs", m.plan.convex_neg_stabs);
        r.add("concave_stabs", static_cast<std::int64_t>(m.plan.concave_stabs.size()));
        r.add("overtwist", m.plan.final_overtwist ? "true" : "false");
        for (const std::string& s : m.steps) r.add("step", s);
        r.add("predicted_convex_c1", vec_str(plan0.predicted_convex.chern));
        r.add("predicted_convex_d3",
              d3_str(plan0.predicted_convex.d3_defined, plan0.predicted_convex.d3));
        r.add("predicted_concave_c1", vec_str(plan0.predicted_concave.chern));
        r.add("predicted_concave_d3",
              d3_str(plan0.predicted_concave.d3_defined, plan0.predicted_concave.d3));
        r.add("final_convex_c1", vec_str(m.convex_final.chern));
        r.add("final_convex_d3", d3_str(m.convex_final.d3_defined, m.convex_final.d3));
        r.add("final_concave_c1", vec_str(m.concave_final.chern));
        r.add("final_concave_d3", d3_str(m.concave_final.d3_defined, m.concave_final.d3));
        return r.out.str();
    }
    std::ostringstream t;
    t << "match input=" << cfg.input << " " << concave_header(spec) << "\n";
    t << "convex " << side_str(cv) << "\n";
    t << "concave " << side_str(cs) << "\n";
    t << "plan fingers=" << m.plan.finger_pairs.size()
      << " convex_neg_stabs=" << m.plan.convex_neg_stabs
      << " concave_stabs=" << m.plan.concave_stabs.size()
      << " overtwist=" << (m.plan.final_overtwist ? "true" : "false") << "\n";
    for (const FingerPairStep& p : m.plan.finger_pairs)
        t << "pair component=" << p.component << " direction=" << p.direction << "\n";
    for (const std::string& s : m.steps) t << "step " << s << "\n";
    t << "predicted convex " << side_str(plan0.predicted_convex) << "\n";
    t << "predicted concave " << side_str(plan0.predicted_concave) << "\n";
    t << "final convex " << side_str(m.convex_final) << "\n";
    t << "final concave " << side_str(m.concave_final) << "\n";
    return t.str();
}

std::string report_blf(const PipelineConfig& cfg) {
    const AlmostSteinHandlebody convex0 =
        normalize_almost_stein(build_handles(load_diagram(cfg.input)));
    const ConcaveSpec& spec = *cfg.concave;
    const MatchOutcome m = execute_match(convex0, build_concave(spec));

    const ALFRecord palf = palfify(minimize_alf(build_alf(carve_all(m.convex))));
    const ConcaveFibration glued = adopt_boundary(m.concave, palf.boundary);
    const BLFRecord blf = assemble_blf(palf, glued);
    const std::int64_t achiral = palf.achiral_count + glued.achiral;

    if (cfg.format == ReportFormat::Structured) {
        Rows r;
        r.add("stage", "blf");
        r.add("input", cfg.input);
        concave_spec_rows(r, spec);
        r.add("glue_ok", blf.glue_ok ? "true" : "false");
        r.add("folds", blf.folds);
        r.add("lefschetz", blf.lefschetz);
        r.add("achiral", achiral);
        r.add("base_points", blf.base_points);
        r.add("convex_letters",
              static_cast<std::int64_t>(palf.vanishing_cycles.letters.size()));
        r.add("convex_achiral", palf.achiral_count);
        r.add("concave_folds", glued.fold_circles);
        r.add("concave_lefschetz", glued.lefschetz);
        r.add("concave_achiral", glued.achiral);
        r.add("boundary_genus", palf.boundary.page.genus);
        r.add("boundary_circles", palf.boundary.page.boundary_count);
        r.add("boundary_rank", palf.boundary.page.h1_rank());
        return r.out.str();
    }
    std::ostringstream t;
    t << "blf input=" << cfg.input << " " << concave_header(spec) << "\n";
    t << "glue_ok=" << (blf.glue_ok ? "true" : "false") << " folds=" << blf.folds
      << " lefschetz=" << blf.lefschetz << " achiral=" << achiral
      << " base_points=" << blf.base_points << "\n";
    t << "convex letters=" << palf.vanishing_cycles.letters.size()
      << " achiral=" << palf.achiral_count << "\n";
    t << "concave folds=" << glued.fold_circles << " lefschetz=" << glued.lefschetz
      << " achiral=" << glued.achiral << "\n";
    t << "boundary genus=" << palf.boundary.page.genus
      << " circles=" << palf.boundary.page.boundary_count
      << " rank=" << palf.boundary.page.h1_rank() << "\n";
    return t.str();
}

std::string run_stage(const PipelineConfig& cfg) {
    const bool needs_concave =
        cfg.stage == Stage::Concave || cfg.stage == Stage::Match || cfg.stage == Stage::Blf;
    if (needs_concave && !cfg.concave)
        throw ParseError(std::string("stage '") + to_string(cfg.stage) + "' needs --concave");

    switch (cfg.stage) {
        case Stage::Invariants: return report_invariants(cfg);
        case Stage::Alf: return report_alf(cfg, "alf", alf_chain(cfg));
        case Stage::Minimize: return report_alf(cfg, "minimize", minimize_alf(alf_chain(cfg)));
        case Stage::Palfify:
            return report_alf(cfg, "palfify", palfify(minimize_alf(alf_chain(cfg))));
        case Stage::Concave: return report_concave(cfg);
        case Stage::Match: return report_match(cfg);
        case Stage::Blf: return report_blf(cfg);
    }
    throw PreconditionError("unreachable stage");
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& config) {
    RunResult r;
    try {
        r.report = run_stage(config);
    } catch (const ParseError& e) {
        r.exit_code = 2;
        r.report = std::string("error: parse: ") + e.what() + "\n";
    } catch (const PreconditionError& e) {
        r.exit_code = 3;
        r.report = std::string("error: precondition: ") + e.what() + "\n";
    } catch (const PlanError& e) {
        r.exit_code = 4;
        r.report = std::string("error: plan: ") + e.what() + "\n";
    }
    return r;
}

std::vector<std::string> validate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {"cannot read '" + path + "'"};
    try {
        const GridDiagram g = parse_diagram_syntax(in);
        return invariant_diagnostics(g);
    } catch (const ParseError& e) {
        // a syntax failure stops the walk; report the line it died on
        return {e.what()};
    }
}

}  // namespace blf
