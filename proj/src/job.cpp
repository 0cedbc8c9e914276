#include "cjs/job.hpp"

#include <regex>

#include "cjs/errors.hpp"

namespace cjs {

Field parse_field(const std::string& s) {
    static const std::regex prime_re(R"(GF\((\d+)\))"), func_re(R"(GF\((\d+)\)\((\w+)\))"),
        ext_re(R"(GF\((\d+)\)\[(\w+)\]/\((.+)\))");
    std::smatch m;
    if (s == "QQ" || s == "Q") return Field::rationals();
    auto prime_of = [](const std::string& t) {
        try {
            return static_cast<u64>(std::stoull(t));
        } catch (const std::exception&) {
            throw input_error("bad characteristic '" + t + "'");
        }
    };
    if (std::regex_match(s, m, prime_re)) return Field::prime(prime_of(m[1]));
    if (std::regex_match(s, m, func_re)) return Field::rational_functions(prime_of(m[1]), m[2]);
    if (std::regex_match(s, m, ext_re)) {
        u64 p = prime_of(m[1]);
        std::string a = m[2];
        Polynomial mod = parse_polynomial(m[3].str(), Field::prime(p), {a});
        UPoly u;
        for (const auto& [mono, c] : mod.terms()) {
            if (u.c.size() <= static_cast<size_t>(mono[0])) u.c.resize(mono[0] + 1, 0);
            u.c[mono[0]] = c.residue();
        }
        upoly::trim(u);
        return Field::extension(p, u, a);
    }
    throw input_error("unknown field '" + s + "' (expected QQ, GF(p), GF(p)(t) or GF(p)[a]/(m))");
}

namespace {

template <class F>
auto at(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw input_error(path + ": " + e.what());
    }
}

std::vector<std::string> strings(const nlohmann::json& j, const std::string& path) {
    return at(path, [&] { return j.get<std::vector<std::string>>(); });
}

} // namespace

Job parse_job(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("job must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        static const std::set<std::string> known = {"field", "vars", "gens", "frame", "boundary",
                                                    "center", "chart", "point", "stratum", "options"};
        if (!known.count(k)) throw input_error("unknown key '" + k + "'");
    }
    for (const char* k : {"vars", "gens", "frame"})
        if (!j.contains(k)) throw input_error(std::string("missing key '") + k + "'");
    Job job;
    Field f = j.contains("field") ? at("field", [&] { return parse_field(j.at("field").get<std::string>()); })
                                  : Field::rationals();
    std::vector<std::string> vars = strings(j.at("vars"), "vars");
    if (vars.empty()) throw input_error("vars: empty");
    std::vector<std::string> gs = strings(j.at("gens"), "gens");
    if (gs.empty()) throw input_error("gens: empty");
    for (size_t i = 0; i < gs.size(); ++i)
        job.gens.push_back(at("gens[" + std::to_string(i) + "]", [&] { return parse_polynomial(gs[i], f, vars); }));
    const auto& fr = j.at("frame");
    job.frame.u = strings(fr.value("u", nlohmann::json::array()), "frame.u");
    job.frame.y = strings(fr.value("y", nlohmann::json::array()), "frame.y");
    if (j.contains("boundary")) {
        const auto& bs = j.at("boundary");
        if (!bs.is_array()) throw input_error("boundary: expected an array");
        for (size_t i = 0; i < bs.size(); ++i) {
            std::string path = "boundary[" + std::to_string(i) + "]";
            at(path, [&] {
                BoundaryComponent b;
                b.generator = parse_polynomial(bs[i].at("generator").get<std::string>(), f, vars);
                b.status = parse_status(bs[i].value("status", std::string("new")));
                b.birth_step = bs[i].value("birth", 0);
                job.frame.boundary.push_back(b);
                return 0;
            });
        }
    }
    at("frame", [&] {
        job.frame.validate(vars);
        return 0;
    });
    if (j.contains("center")) {
        auto c = strings(j.at("center"), "center");
        job.center = std::set<std::string>(c.begin(), c.end());
        for (const auto& v : *job.center)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                throw input_error("center: unknown variable '" + v + "'");
    }
    if (j.contains("chart")) job.chart_var = at("chart", [&] { return j.at("chart").get<std::string>(); });
    if (j.contains("point")) {
        const auto& ps = j.at("point");
        if (!ps.is_array()) throw input_error("point: expected an array");
        for (size_t i = 0; i < ps.size(); ++i) {
            at("point[" + std::to_string(i) + "]", [&] {
                PointSpec a;
                a.var = ps[i].at("var").get<std::string>();
                a.value = ps[i].value("value", std::string());
                a.condition = ps[i].value("condition", std::string());
                if (a.value.empty() == a.condition.empty()) throw input_error("needs exactly one of 'value' and 'condition'");
                job.point.push_back(a);
                return 0;
            });
        }
    }
    if (j.contains("stratum")) {
        const auto& ss = j.at("stratum");
        if (!ss.is_array()) throw input_error("stratum: expected an array");
        job.stratum.emplace();
        for (size_t i = 0; i < ss.size(); ++i) {
            at("stratum[" + std::to_string(i) + "]", [&] {
                StratumComponent sc;
                for (const auto& v : ss[i].at("component").get<std::vector<std::string>>()) {
                    if (std::find(vars.begin(), vars.end(), v) == vars.end())
                        throw input_error("unknown variable '" + v + "'");
                    sc.vars.insert(v);
                }
                sc.label = ss[i].value("label", 0);
                sc.original = ss[i].value("original", true);
                job.stratum->push_back(sc);
                return 0;
            });
        }
    }
    if (j.contains("options")) {
        const auto& o = j.at("options");
        at("options", [&] {
            for (const auto& [k, v] : o.items()) {
                if (k == "max_steps") job.options.max_steps = v.get<int>();
                else if (k == "max_charts") job.options.max_charts = v.get<int>();
                else if (k == "labels") job.options.labels = parse_label_mode(v.get<std::string>());
                else if (k == "prepare_budget") job.options.prepare_budget = v.get<int>();
                else if (k == "sigma_budget") job.options.sigma_budget = v.get<int>();
                else throw input_error("unknown option '" + k + "'");
            }
            if (job.options.max_steps < 0 || job.options.max_charts < 1) throw input_error("limits must be positive");
            return 0;
        });
    }
    return job;
}

Job parse_job_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_job(j);
}

ChartState apply_point(const ChartState& chart, const std::vector<PointSpec>& point) {
    if (point.empty()) return chart;
    std::vector<PointAssignment> as;
    for (size_t i = 0; i < point.size(); ++i) {
        as.push_back(at("point[" + std::to_string(i) + "]", [&] {
            PointAssignment a;
            a.var = point[i].var;
            if (!point[i].value.empty())
                a.value = parse_polynomial(point[i].value, chart.field(), {}).value_at_origin();
            else
                a.condition = parse_polynomial(point[i].condition, chart.field(), chart.vars());
            return a;
        }));
    }
    return locate_point(chart, as);
}

ChartState Job::base() const {
    ChartState c;
    c.gens = gens;
    c.frame = frame;
    return c;
}

ChartState Job::chart() const { return apply_point(base(), point); }

ChartState Job::labelled_chart() const { return label(chart()); }

ChartState Job::label(ChartState c) const {
    if (!stratum) {
        label_components(c, nullptr, options.labels);
        return c;
    }
    auto eqs = stratum_equations(c);
    for (const auto& sc : *stratum) {
        for (const auto& e : eqs)
            for (const auto& [m, coef] : e.terms()) {
                bool hit = false;
                for (const auto& v : sc.vars) hit = hit || m[e.var_index(v)] > 0;
                if (!hit) throw input_error("stratum: " + sc.to_string() + " is not in the maximal stratum");
            }
        c.stratum.push_back(sc);
    }
    std::stable_sort(c.stratum.begin(), c.stratum.end(), [](const auto& a, const auto& b) {
        return a.label != b.label ? a.label < b.label : a.vars < b.vars;
    });
    return c;
}

} // namespace cjs
