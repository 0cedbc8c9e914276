// Command-line front end: reads a JSON job, prints a JSON (or DOT) report.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cjs/driver.hpp"
#include "cjs/errors.hpp"
#include "cjs/job.hpp"
#include "cjs/preparation.hpp"

using namespace cjs;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, input = 2, scope = 3, monotone = 4 };

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) throw input_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

std::vector<StratumComponent> originals(const ChartState& c) {
    std::vector<StratumComponent> C;
    for (const auto& s : c.stratum)
        if (s.original) C.push_back(s);
    return C;
}

ojson vertices_json(const FPolyhedron& d) {
    ojson a = ojson::array();
    for (const auto& v : d.vertices()) a.push_back(to_string(v));
    return a;
}

ojson analyze(const Job& job) {
    ChartState c = job.labelled_chart();
    ojson r;
    r["command"] = "analyze";
    r["chart"] = to_json(c);
    Iota0 i0 = iota0(c);
    r["nu_star"] = i0.hs.orders;
    r["old_count"] = i0.old_count;
    r["e"] = i0.e;
    r["eO"] = i0.eO;
    r["case"] = to_string(classify_case(c, originals(c)));
    std::string why;
    r["terminal"] = is_terminal(c, &why);
    if (!why.empty()) r["terminal_reason"] = why;
    if (i0.hs.is_regular()) r["notes"] = {"resolution process is finished"};
    return r;
}

ojson polyhedron(const Job& job) {
    ChartState c = job.chart();
    ojson r;
    r["command"] = "polyhedron";
    r["frame"] = {{"u", c.frame.u}, {"y", c.frame.y}};
    r["input_vertices"] = vertices_json(polyhedron_of(c.gens, c.frame));
    PreparationResult pr = prepare(c.gens, c.frame, job.options.prepare_budget);
    r["status"] = to_string(pr.status);
    r["vertices"] = vertices_json(pr.polyhedron);
    r["delta"] = to_json(delta(pr.polyhedron));
    std::vector<std::string> prepared;
    for (const auto& g : pr.gens) prepared.push_back(g.to_string());
    r["prepared_generators"] = prepared;
    r["sides"] = ojson::array();
    if (pr.polyhedron.dim() == 2 && !pr.polyhedron.empty()) {
        for (int side : {1, 2}) {
            FaceNumbers fn = face_numbers(pr.polyhedron, side);
            ojson s;
            s["side"] = side;
            s["alpha"] = to_json(fn.alpha);
            s["beta"] = to_json(fn.beta);
            s["gamma"] = to_json(fn.gamma);
            s["s"] = to_json(fn.s);
            try {
                SigmaResult sr = sigma(pr.gens, c.frame, side, job.options.sigma_budget);
                s["sigma"] = to_json(sr.value);
                s["sigma_lower_bound"] = sr.lower_bound;
                if (!sr.substitutions.empty()) s["substitutions"] = sr.substitutions;
            } catch (const scope_error& e) {
                s["sigma_error"] = e.what();
            }
            r["sides"].push_back(s);
        }
    }
    r["log"] = ojson::array();
    for (const auto& st : pr.log) {
        ojson l;
        l["kind"] = st.kind;
        l["vertex"] = to_string(st.vertex);
        std::vector<std::string> lam;
        for (const auto& x : st.lambda) lam.push_back(x.to_string());
        if (!lam.empty()) l["lambda"] = lam;
        l["after"] = vertices_json(st.after);
        r["log"].push_back(l);
    }
    if (!pr.notes.empty()) r["notes"] = pr.notes;
    if (pr.stable) r["stable_vertices"] = vertices_json(*pr.stable);
    return r;
}

ojson invariant(const Job& job) {
    ChartState c = job.labelled_chart();
    auto C = originals(c);
    Iota io = compute_iota(c, C, job.options.prepare_budget, job.options.sigma_budget);
    ojson r;
    r["command"] = "invariant";
    r["chart"] = to_json(c);
    r["iota"] = to_json(io);
    if (io.i0.hs.is_regular()) r["notes"] = {"resolution process is finished"};
    return r;
}

ojson blowup(const Job& job) {
    ChartState parent = job.label(job.base());
    Center center;
    std::string reason;
    if (job.center) {
        center = make_center(*job.center, parent.vars());
        for (const auto& s : parent.stratum)
            if (s.vars == center.vars) center.label = s.label;
        reason = "given";
    } else {
        CenterChoice ch = select_center(parent);
        center = ch.center;
        reason = ch.reason;
    }
    auto piota = compute_iota(parent, originals(parent), job.options.prepare_budget, job.options.sigma_budget);
    ojson r;
    r["command"] = "blowup";
    r["parent"] = to_json(parent);
    r["parent"]["iota"] = to_json(piota);
    r["center"] = center.to_string();
    r["center_kind"] = to_string(center.kind);
    r["reason"] = reason;
    std::vector<std::string> cvars;
    if (job.chart_var) {
        cvars.push_back(*job.chart_var);
    } else {
        for (const auto& v : parent.vars())
            if (center.vars.count(v)) cvars.push_back(v);
    }
    if (!job.point.empty() && cvars.size() != 1) throw input_error("point: needs a single 'chart'");
    r["children"] = ojson::array();
    for (const auto& cv : cvars) {
        ChartState child = blow_up_chart(parent, center, cv);
        child.id = static_cast<int>(r["children"].size()) + 1;
        if (!job.point.empty()) child = apply_point(child, job.point);
        ojson cj;
        std::string stratum_error;
        try {
            label_components(child, &parent, job.options.labels);
        } catch (const scope_error& e) {
            stratum_error = e.what();
        }
        cj = to_json(child);
        cj["on_X"] = child.origin_on_X();
        if (child.origin_on_X()) {
            cj["classification"] = classify_point(parent, child).tag();
            if (stratum_error.empty()) {
                Iota ci = compute_iota(child, originals(child), job.options.prepare_budget, job.options.sigma_budget);
                cj["iota"] = to_json(ci);
                cj["iota_vs_parent"] = to_string(compare_iota(ci, piota));
            } else {
                cj["stratum_error"] = stratum_error;
            }
        }
        r["children"].push_back(cj);
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic polyhedra, resolution invariants and blow-up traces"};
    app.require_subcommand(1);
    std::string job_path, out_path, dot_path, format = "json";
    int max_steps = -1;
    std::string labels;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("job", job_path, "JSON job file (stdin when omitted or '-')");
        sc->add_option("-o,--output", out_path, "write the report here instead of stdout");
    };
    auto* a = app.add_subcommand("analyze", "orders, directrix dimensions, case and stratum labels");
    auto* p = app.add_subcommand("polyhedron", "prepared characteristic polyhedron, delta, face numbers, sigma");
    auto* i = app.add_subcommand("invariant", "the full invariant at the chart origin");
    auto* b = app.add_subcommand("blowup", "blow up the given or selected center");
    auto* r = app.add_subcommand("resolve", "run the resolution driver and check monotonicity");
    auto* e = app.add_subcommand("export", "re-emit a stored trace as JSON or DOT");
    for (auto* sc : {a, p, i, b, r, e}) add_common(sc);
    r->add_option("--max-steps", max_steps, "override options.max_steps");
    r->add_option("--labels", labels, "inherit | fresh")->check(CLI::IsMember({"inherit", "fresh"}));
    r->add_option("--dot", dot_path, "also write the trace as DOT");
    e->add_option("--format", format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? 0 : Exit::input;
    }

    try {
        if (e->parsed()) {
            ojson t;
            try {
                t = ojson::parse(read_input(job_path));
            } catch (const nlohmann::json::parse_error& err) {
                throw input_error(std::string("malformed trace: ") + err.what());
            }
            for (const char* k : {"status", "charts", "events"})
                if (!t.contains(k)) throw input_error(std::string("trace: missing key '") + k + "'");
            write_output(out_path, format == "dot" ? trace_to_dot(t) : t.dump(2) + "\n");
            return Exit::ok;
        }
        Job job = parse_job_text(read_input(job_path));
        if (r->parsed()) {
            if (max_steps >= 0) job.options.max_steps = max_steps;
            if (!labels.empty()) job.options.labels = parse_label_mode(labels);
            ResolutionTrace tr = resolve(job.stratum ? job.labelled_chart() : job.chart(), job.options);
            ojson t = to_json(tr);
            write_output(out_path, t.dump(2) + "\n");
            if (!dot_path.empty()) write_output(dot_path, trace_to_dot(t));
            if (tr.status == TraceStatus::scope_error) {
                std::cerr << "scope error: " << tr.error << "\n";
                return Exit::scope;
            }
            MonotoneReport m = check_monotone(tr);
            if (!m.ok) {
                std::cerr << "monotonicity failure: " << m.failure << "\n";
                return Exit::monotone;
            }
            if (tr.status == TraceStatus::step_limit) {
                std::cerr << "step limit reached before every chart was terminal\n";
                return Exit::monotone;
            }
            return Exit::ok;
        }
        ojson rep = a->parsed() ? analyze(job) : p->parsed() ? polyhedron(job) : i->parsed() ? invariant(job) : blowup(job);
        write_output(out_path, rep.dump(2) + "\n");
        return Exit::ok;
    } catch (const input_error& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return Exit::input;
    } catch (const scope_error& err) {
        std::cerr << "scope error: " << err.what() << "\n";
        return Exit::scope;
    } catch (const unsupported_operation& err) {
        std::cerr << "scope error: " << err.what() << "\n";
        return Exit::scope;
    } catch (const cjs::domain_error& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return Exit::input;
    } catch (const degenerate_input& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return Exit::input;
    }
}
