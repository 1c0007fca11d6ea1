#include "apt/cli.hpp"

#include "apt/error.hpp"
#include "apt/oracle.hpp"
#include "apt/pipeline.hpp"
#include "apt/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <iostream>
#include <sstream>
#include <variant>

namespace apt::cli {

namespace {

using nlohmann::json;

struct MasHalf {};
using Property = std::variant<PropertySpec, MasHalf>;

Property parse_property(const std::string& text)
{
    if (text == "cut")
        return PropertySpec::cut();
    if (text == "acyclic")
        return PropertySpec::acyclic();
    if (text == "mas-half")
        return MasHalf{};
    if (text.rfind("color:", 0) == 0) {
        std::size_t used = 0;
        const std::string q = text.substr(6);
        int value = 0;
        try {
            value = std::stoi(q, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != q.size())
            throw PreconditionError("bad color count in '" + text + "'");
        return PropertySpec::coloring(value);
    }
    if (text.rfind("hom:", 0) == 0)
        return PropertySpec::hom(parse_graph(read_file(text.substr(4))));
    throw PreconditionError("unknown property '" + text + "' (cut, color:q, hom:<file>, acyclic, mas-half)");
}

std::vector<Vertex> parse_s_file(const std::string& path, int n)
{
    std::istringstream in(read_file(path));
    std::vector<Vertex> s;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::string w;
        while (words >> w) {
            if (w[0] == '#' || w == "c")
                break;
            std::size_t used = 0;
            long id = 0;
            try {
                id = std::stol(w, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != w.size() || id < 1 || id > n)
                throw ParseError(line_no, "bad vertex id '" + w + "' in deletion set file");
            s.push_back(static_cast<Vertex>(id - 1));
        }
    }
    return s;
}

json ids_json(const std::vector<Vertex>& vs)
{
    json out = json::array();
    for (Vertex v : vs)
        out.push_back(v + 1);
    return out;
}

std::string ids_text(const std::vector<Vertex>& vs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
        out += (i ? "," : "") + std::to_string(vs[i] + 1);
    return out + "}";
}

std::array<int, 4> rule_counts(const std::vector<RuleApplication>& trace)
{
    std::array<int, 4> c{};
    for (const auto& app : trace)
        ++c[static_cast<std::size_t>(app.rule - 1)];
    return c;
}

json rule_counts_json(const std::vector<RuleApplication>& trace)
{
    const auto c = rule_counts(trace);
    return {{"1", c[0]}, {"2", c[1]}, {"3", c[2]}, {"4", c[3]}};
}

json trace_json(const std::vector<RuleApplication>& trace)
{
    json out = json::array();
    for (const auto& app : trace)
        out.push_back(app.trace_line(1));
    return out;
}

/// Edge list of a witness as 1-based endpoint pairs (tail first for arcs).
std::vector<std::pair<Vertex, Vertex>> witness_pairs(const Witness& w, const Graph* g, const Digraph* d)
{
    std::vector<std::pair<Vertex, Vertex>> out;
    for (EdgeId e : w.edges) {
        if (g) {
            const Edge& x = g->edge(e);
            out.emplace_back(x.tail() + 1, x.head() + 1);
        } else {
            const auto& a = d->arcs[static_cast<std::size_t>(e)];
            out.emplace_back(a.first + 1, a.second + 1);
        }
    }
    return out;
}

json witness_json(const Witness& w, const Graph* g, const Digraph* d)
{
    json edges = json::array();
    for (auto [a, b] : witness_pairs(w, g, d))
        edges.push_back({a, b});
    json cert = json::array();
    for (Vertex v : w.certificate)
        cert.push_back(v + 1);
    return {{"kind", w.kind == Witness::Kind::order ? "order" : "homomorphism"},
            {"edges", std::move(edges)},
            {"certificate", std::move(cert)}};
}

json decision_json(const Decision& dec, bool with_trace, const Graph* g, const Digraph* d)
{
    const auto& diag = dec.diagnostics;
    json out = {{"answer", dec.yes ? "YES" : "NO"},
                {"k_star", diag.k_star.str()},
                {"s_size", diag.s.size()},
                {"rule_counts", rule_counts_json(diag.trace)},
                {"solver", diag.solver},
                {"s", ids_json(diag.s)},
                {"threshold", diag.threshold.str()},
                {"value", diag.value ? json(*diag.value) : json(nullptr)},
                {"timings", {{"reduce_seconds", diag.reduce_seconds}, {"solve_seconds", diag.solve_seconds}}}};
    if (d)
        out["kernel"] = {{"opposite_pairs", diag.opposite_pairs},
                         {"identifications", diag.identifications},
                         {"n", diag.kernel_n},
                         {"exact_stage", diag.exact_stage}};
    if (with_trace)
        out["trace"] = trace_json(diag.trace);
    if (dec.witness)
        out["witness"] = witness_json(*dec.witness, g, d);
    return out;
}

void print_decision(std::ostream& out, const Decision& dec, bool with_trace, const Graph* g, const Digraph* d)
{
    const auto& diag = dec.diagnostics;
    if (with_trace)
        for (const auto& app : diag.trace)
            out << app.trace_line(1) << '\n';
    out << "answer: " << (dec.yes ? "YES" : "NO") << '\n';
    out << "solver: " << diag.solver << '\n';
    if (!d) {
        const auto c = rule_counts(diag.trace);
        out << "rules: " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
        out << "k_star: " << diag.k_star << '\n';
        out << "S: " << ids_text(diag.s) << '\n';
    } else {
        out << "opposite pairs: " << diag.opposite_pairs << ", identifications: " << diag.identifications
            << ", kernel n: " << diag.kernel_n << '\n';
    }
    out << "threshold: " << diag.threshold << '\n';
    if (diag.value)
        out << "value: " << *diag.value << '\n';
    if (dec.witness) {
        out << "witness:";
        for (auto [a, b] : witness_pairs(*dec.witness, g, d))
            out << ' ' << a << (g && !g->is_oriented() ? "-" : ">") << b;
        out << '\n';
    }
}

struct Options {
    std::string file;
    std::string property;
    int k = 0;
    std::string lambda;
    bool json_out = false;
    bool trace = false;
    bool no_spencer = false;
    std::string solver = "auto";
    std::string s_file;
    int jobs = 1;
    int nmax = 5;
    int trials = 20;
    std::uint64_t seed = 1;
    OracleBudget budget;
};

int cmd_decide(const Options& o, std::ostream& out)
{
    const Property prop = parse_property(o.property);
    const std::string text = read_file(o.file);
    if (std::holds_alternative<MasHalf>(prop)) {
        if (o.solver != "auto")
            throw PreconditionError("mas-half has its own solver");
        const Digraph d = parse_digraph(text);
        const Decision dec = mas_above_half(d, o.k);
        if (o.json_out)
            out << decision_json(dec, false, nullptr, &d).dump() << '\n';
        else
            print_decision(out, dec, false, nullptr, &d);
        return dec.yes ? 0 : 1;
    }
    const PropertySpec& spec = std::get<PropertySpec>(prop);
    const Graph g = parse_graph(text);
    DecideOptions options;
    options.structured.spencer = !o.no_spencer;
    options.structured.jobs = o.jobs;
    Decision dec;
    if (o.solver == "structured") {
        if (o.s_file.empty())
            throw PreconditionError("--solver structured needs --s-file");
        dec = decide_structured(g, parse_s_file(o.s_file, g.n()), o.k, spec, options);
    } else {
        if (!o.s_file.empty())
            throw PreconditionError("--s-file is only used with --solver structured");
        dec = apt_decide(g, o.k, spec, options);
    }
    if (o.json_out)
        out << decision_json(dec, o.trace, &g, nullptr).dump() << '\n';
    else
        print_decision(out, dec, o.trace, &g, nullptr);
    return dec.yes ? 0 : 1;
}

int cmd_reduce(const Options& o, std::ostream& out)
{
    Rational lambda;
    if (!o.lambda.empty() == !o.property.empty())
        throw PreconditionError("reduce takes exactly one of --lambda and --property");
    if (!o.lambda.empty()) {
        lambda = Rational::parse(o.lambda);
    } else {
        const Property prop = parse_property(o.property);
        if (std::holds_alternative<MasHalf>(prop))
            throw PreconditionError("mas-half has no reduction");
        lambda = std::get<PropertySpec>(prop).lambda();
    }
    const Graph g = parse_graph(read_file(o.file));
    const ReductionResult r = reduce(g, o.k, lambda);
    if (o.json_out) {
        json j = {{"outcome", r.early_yes() ? "early-yes" : "decomposition"},
                  {"k_star", r.k_star.str()},
                  {"s_size", r.s.size()},
                  {"s", ids_json(r.s)},
                  {"rule_counts", rule_counts_json(r.trace)}};
        if (o.trace)
            j["trace"] = trace_json(r.trace);
        out << j.dump() << '\n';
    } else {
        if (o.trace)
            for (const auto& app : r.trace)
                out << app.trace_line(1) << '\n';
        out << "outcome: " << (r.early_yes() ? "early-yes" : "decomposition") << '\n';
        out << "k_star: " << r.k_star << '\n';
        out << "S: " << ids_text(r.s) << '\n';
    }
    return 0;
}

int cmd_oracle(const Options& o, std::ostream& out)
{
    const Property prop = parse_property(o.property);
    const std::string text = read_file(o.file);
    long long value = 0;
    Rational bound;
    std::vector<Vertex> certificate;
    std::string cert_kind;
    if (std::holds_alternative<MasHalf>(prop)) {
        const Digraph d = parse_digraph(text);
        const ExactValue v = exact_max_acyclic(d, o.budget);
        value = v.value;
        certificate = v.certificate;
        cert_kind = "order";
        bound = Rational(static_cast<std::int64_t>(d.arcs.size()), 2);
    } else {
        const PropertySpec& spec = std::get<PropertySpec>(prop);
        const Graph g = parse_graph(text);
        if (g.kind() != spec.instance_kind())
            throw PreconditionError("property " + spec.name() + " is stated over " + to_string(spec.instance_kind()) +
                                    " graphs, input is " + to_string(g.kind()));
        const ExactValue v = spec.is_hom() ? exact_max_hom(g, spec.target(), o.budget) : exact_max_acyclic(g, o.budget);
        value = v.value;
        certificate = v.certificate;
        cert_kind = spec.is_hom() ? "homomorphism" : "order";
        bound = is_connected(g) ? pt_bound(g, spec.lambda()) : pt_bound(g.n(), g.m(), spec.lambda());
    }
    std::optional<bool> yes;
    if (o.k != 0) {
        if (o.k < 1)
            throw PreconditionError("k must be at least 1");
        yes = Rational(value) >= bound + Rational(o.k);
    }
    if (o.json_out) {
        json j = {{"value", value}, {"bound", bound.str()}, {"certificate_kind", cert_kind},
                  {"certificate", ids_json(certificate)}};
        if (yes) {
            j["answer"] = *yes ? "YES" : "NO";
            j["threshold"] = (bound + Rational(o.k)).str();
        }
        out << j.dump() << '\n';
    } else {
        out << "value: " << value << '\n' << "bound: " << bound << '\n';
        if (yes)
            out << "answer: " << (*yes ? "YES" : "NO") << " (threshold " << bound + Rational(o.k) << ")\n";
    }
    return yes && !*yes ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const Property prop = parse_property(o.property);
    if (std::holds_alternative<MasHalf>(prop))
        throw PreconditionError("verify-property takes cut, color:q, hom:<file> or acyclic");
    const PropertySpec spec = std::get<PropertySpec>(prop);
    const Rational lambda = o.lambda.empty() ? spec.lambda() : Rational::parse(o.lambda);
    const GraphKind kind = spec.is_acyclic() ? GraphKind{true, false} : spec.target().kind();
    const Membership member = [&spec](const Graph& g) { return is_member(g, spec).has_value(); };
    const ExtendibilityReport rep = check_strong_extendibility(member, lambda, o.nmax, o.trials, o.seed, kind);

    json j = {{"property", spec.name()},
              {"lambda", lambda.str()},
              {"n_max", o.nmax},
              {"trials", o.trials},
              {"seed", o.seed},
              {"graphs_tested", rep.graphs_tested},
              {"cuts_tested", rep.cuts_tested},
              {"weight_functions_tested", rep.weight_functions_tested},
              {"note", "falsification only: no counterexample does not prove the property extendible"},
              {"counterexample", nullptr}};
    if (rep.counterexample) {
        const auto& cx = *rep.counterexample;
        json w = json::array();
        for (const auto& x : cx.weights)
            w.push_back(x.str());
        j["counterexample"] = {{"condition", to_string(cx.condition)},
                               {"graph", write_graph(cx.g)},
                               {"s", ids_json(cx.s)},
                               {"weights", std::move(w)},
                               {"best_fraction", cx.best_fraction.str()},
                               {"detail", cx.detail},
                               {"reverified", reverify(cx, member, lambda)}};
    }
    if (o.json_out) {
        out << j.dump() << '\n';
    } else {
        out << "graphs tested: " << rep.graphs_tested << ", cuts: " << rep.cuts_tested
            << ", weight functions: " << rep.weight_functions_tested << '\n';
        if (rep.counterexample) {
            const auto& cx = *rep.counterexample;
            out << "counterexample (" << to_string(cx.condition) << "): " << cx.detail << '\n';
            out << write_graph(cx.g);
            if (!cx.s.empty())
                out << "S: " << ids_text(cx.s) << '\n';
        } else {
            out << "no counterexample found\n";
        }
    }
    return rep.counterexample ? 1 : 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Above Poljak-Turzik decision tool"};
    app.name("apt");
    app.require_subcommand(1);
    Options o;

    auto* decide = app.add_subcommand("decide", "decide (G, k) for a property");
    decide->add_option("file", o.file, "graph file")->required();
    decide->add_option("--property", o.property, "cut | color:q | hom:<file> | acyclic | mas-half")->required();
    decide->add_option("-k", o.k, "parameter k >= 1")->required();
    decide->add_flag("--json", o.json_out, "machine-readable output");
    decide->add_flag("--trace", o.trace, "print rule applications");
    decide->add_flag("--no-spencer", o.no_spencer, "disable the large tournament shortcut");
    decide->add_option("--solver", o.solver, "auto | structured")->check(CLI::IsMember({"auto", "structured"}));
    decide->add_option("--s-file", o.s_file, "deletion set for --solver structured (1-based ids)");
    decide->add_option("--jobs", o.jobs, "threads for the structured solver")->check(CLI::Range(1, 256));

    auto* red = app.add_subcommand("reduce", "apply the reduction rules only");
    red->add_option("file", o.file, "graph file")->required();
    red->add_option("-k", o.k, "parameter k >= 1")->required();
    red->add_option("--lambda", o.lambda, "lambda as p/q");
    red->add_option("--property", o.property, "take lambda from a property");
    red->add_flag("--json", o.json_out, "machine-readable output");
    red->add_flag("--trace", o.trace, "print rule applications");

    auto* ora = app.add_subcommand("oracle", "exact values by brute force");
    ora->add_option("file", o.file, "graph file")->required();
    ora->add_option("--property", o.property, "cut | color:q | hom:<file> | acyclic | mas-half")->required();
    ora->add_option("-k", o.k, "also decide against bound + k");
    ora->add_flag("--json", o.json_out, "machine-readable output");
    ora->add_option("--max-maps", o.budget.max_maps, "largest number of maps to enumerate")->check(CLI::PositiveNumber);
    ora->add_option("--max-vertices", o.budget.max_acyclic_vertices, "largest graph for the ordering DP")
        ->check(CLI::Range(1, 26));

    auto* ver = app.add_subcommand("verify-property", "search for strong extendibility counterexamples");
    ver->add_option("--property", o.property, "cut | color:q | hom:<file> | acyclic")->required();
    ver->add_option("--lambda", o.lambda, "lambda as p/q (default: the property's)");
    ver->add_option("--nmax", o.nmax, "largest graph size")->check(CLI::Range(1, 6));
    ver->add_option("--trials", o.trials, "random weight functions per cut")->check(CLI::NonNegativeNumber);
    ver->add_option("--seed", o.seed, "random seed");
    ver->add_flag("--json", o.json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (decide->parsed())
            return cmd_decide(o, out);
        if (red->parsed())
            return cmd_reduce(o, out);
        if (ora->parsed())
            return cmd_oracle(o, out);
        return cmd_verify(o, out);
    } catch (const ParseError& e) {
        err << "apt: parse error: " << e.what() << '\n';
    } catch (const BudgetError& e) {
        err << "apt: limit exceeded: " << e.what() << '\n';
    } catch (const InternalError& e) {
        err << "apt: internal error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "apt: " << e.what() << '\n';
    }
    return 2;
}

}  // namespace apt::cli
