#include "circdiam/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "circdiam/campaign.hpp"
#include "circdiam/errors.hpp"
#include "circdiam/io.hpp"

namespace circdiam::cli {

using nlohmann::json;

namespace {

/// Everything the geometric commands need, whatever the input file holds.
struct Model
{
    std::optional<dtp::DualTransportationInstance> instance;
    Polyhedron polyhedron;
    CircuitSet circuits;
    std::vector<Point> vertices;

    bool is_instance() const { return instance.has_value(); }
};

Model load_model(const Options& opt, bool need_circuits = true, bool need_vertices = true)
{
    if (opt.input.empty())
        throw ParseError("--input is required");
    auto parsed = io::parse_model(io::read_file(opt.input));
    if (auto* P = std::get_if<Polyhedron>(&parsed))
    {
        Model m{std::nullopt, *P, {}, {}};
        if (need_circuits)
            m.circuits = enumerate_circuits(m.polyhedron);
        if (need_vertices)
            m.vertices = enumerate_vertices(m.polyhedron);
        return m;
    }
    auto& inst = std::get<dtp::DualTransportationInstance>(parsed);
    Model m{inst, dtp::build_polyhedron(inst), {}, {}};
    if (need_circuits)
        m.circuits = dtp::graph_circuit_set(inst.graph);
    if (need_vertices)
        m.vertices = dtp::enumerate_vertices(inst);
    return m;
}

json render_point(const Model& m, const Point& p)
{
    return m.is_instance() ? io::to_json(dtp::potentials(p)) : io::to_json(p);
}

json render_edge(const dtp::BipartiteGraph& G, std::size_t e)
{
    return json::array({G.edge(e).a, G.edge(e).b});
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(item);
    return parts;
}

/// Index into the canonical vertex order, "tree:a-b,..." or comma-separated coordinates.
std::pair<Point, std::size_t> resolve_vertex(const Model& m, const std::string& spec, const char* flag)
{
    if (spec.empty())
        throw ParseError(std::string(flag) + " is required");
    auto index_of = [&](const Point& p) -> std::size_t {
        auto it = std::lower_bound(m.vertices.begin(), m.vertices.end(), p);
        if (it == m.vertices.end() || !(*it == p))
            throw NotAVertex(std::string(flag) + " " + spec + " is not a vertex");
        return static_cast<std::size_t>(it - m.vertices.begin());
    };
    if (std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    {
        std::size_t k = std::stoul(spec);
        if (k >= m.vertices.size())
            throw ParseError(std::string(flag) + ": vertex index " + spec + " out of range (" +
                             std::to_string(m.vertices.size()) + " vertices)");
        return {m.vertices[k], k};
    }
    if (spec.rfind("tree:", 0) == 0)
    {
        if (!m.is_instance())
            throw ParseError(std::string(flag) + ": trees address instance vertices only");
        const auto& G = m.instance->graph;
        dtp::SpanningTree tree;
        for (const auto& item : split(spec.substr(5), ','))
        {
            auto ends = split(item, '-');
            if (ends.size() != 2)
                throw ParseError(std::string(flag) + ": edge \"" + item + "\" is not of the form a-b");
            auto e = G.edge_index(std::stoul(ends[0]), std::stoul(ends[1]));
            if (!e)
                throw ParseError(std::string(flag) + ": " + item + " is not an edge");
            tree.edges.push_back(*e);
        }
        std::sort(tree.edges.begin(), tree.edges.end());
        if (!dtp::is_spanning_tree(G, tree.edges))
            throw ParseError(std::string(flag) + ": edges do not form a spanning tree");
        auto p = dtp::vertex_from_tree(*m.instance, tree);
        if (!p)
            throw NotAVertex(std::string(flag) + ": tree does not define a feasible vertex");
        return {*p, index_of(*p)};
    }
    Vector coords;
    for (const auto& item : split(spec, ','))
        coords.push_back(parse_rational(item));
    if (m.is_instance() && coords.size() == m.polyhedron.dim() + 1)
    {
        if (!is_zero(coords.front()))
            throw ParseError(std::string(flag) + ": potential of node 0 must be 0");
        coords.erase(coords.begin());
    }
    if (coords.size() != m.polyhedron.dim())
        throw ParseError(std::string(flag) + ": expected " + std::to_string(m.polyhedron.dim()) + " coordinates");
    Point p(std::move(coords));
    return {p, index_of(p)};
}

std::size_t default_cap(const Model& m)
{
    if (m.is_instance())
        return m.instance->num_nodes() - 2;
    return m.polyhedron.num_rows() - m.polyhedron.dim();
}

Rational density_or(const Options& opt, const Rational& fallback)
{
    return opt.density == "vary" ? fallback : parse_rational(opt.density);
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ull)
{
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest(const Options& opt)
{
    std::ostringstream args;
    args << opt.command << '|' << opt.from << '|' << opt.to << '|' << (opt.cap ? std::to_string(*opt.cap) : "-")
         << '|' << opt.mode << '|' << opt.certified << '|' << opt.constructive << '|' << opt.trials << '|' << opt.m << '|' << opt.n << '|'
         << opt.density << '|' << opt.seed;
    std::uint64_t h = fnv1a(args.str());
    if (!opt.input.empty())
        h = fnv1a(io::read_file(opt.input), h);
    if (!opt.walk.empty())
        h = fnv1a(io::read_file(opt.walk), h);
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

RunReport make_report(const Options& opt)
{
    RunReport r;
    r.command = opt.command;
    r.inputs_digest = digest(opt);
    return r;
}

void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write " + path);
    out << bytes;
}

void render_value(std::ostream& os, const json& value, const std::string& indent)
{
    if (value.is_object())
    {
        for (const auto& [key, item] : value.items())
        {
            bool nested = item.is_object() || (item.is_array() && !item.empty() && item.front().is_object());
            os << indent << key << ":";
            if (nested)
            {
                os << "\n";
                render_value(os, item, indent + "  ");
            }
            else
            {
                os << " " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
            }
        }
    }
    else if (value.is_array())
    {
        for (std::size_t i = 0; i < value.size(); ++i)
        {
            os << indent << "- [" << i << "]\n";
            render_value(os, value[i], indent + "  ");
        }
    }
    else
    {
        os << indent << value.dump() << "\n";
    }
}

}  // namespace

json RunReport::to_json() const
{
    json j{{"command", command}, {"inputs_digest", inputs_digest}, {"results", results}, {"exit_code", exit_code}};
    if (timing_ms)
        j["timing_ms"] = *timing_ms;
    return j;
}

std::string render_text(const RunReport& report)
{
    std::ostringstream os;
    os << "command: " << report.command << "\n";
    os << "inputs: " << report.inputs_digest << "\n";
    render_value(os, report.results, "");
    if (report.timing_ms)
        os << "timing_ms: " << *report.timing_ms << "\n";
    return os.str();
}

RunReport cmd_circuits(const Options& opt)
{
    RunReport r = make_report(opt);
    Model m = load_model(opt, true, false);
    json list = json::array();
    if (m.is_instance())
    {
        for (const auto& gc : dtp::enumerate_graph_circuits(m.instance->graph))
        {
            IntVector g = gc.direction.entries();
            g.insert(g.begin(), Integer(0));
            list.push_back({{"direction", io::to_json(g)}, {"R", gc.partition.R}, {"S", gc.partition.S}});
        }
    }
    else
    {
        for (const auto& g : m.circuits.items())
            list.push_back(io::to_json(g.entries()));
    }
    r.results = {{"kind", m.is_instance() ? "instance" : "polyhedron"},
                 {"dimension", m.polyhedron.dim()},
                 {"count", m.circuits.size()},
                 {"circuits", list}};
    return r;
}

RunReport cmd_vertices(const Options& opt)
{
    RunReport r = make_report(opt);
    Model m = load_model(opt, false, true);
    json list = json::array();
    for (std::size_t k = 0; k < m.vertices.size(); ++k)
    {
        json v{{"index", k}, {"point", render_point(m, m.vertices[k])}};
        if (m.is_instance())
        {
            json tight = json::array();
            for (auto e : dtp::tight_edges(*m.instance, m.vertices[k]))
                tight.push_back(render_edge(m.instance->graph, e));
            v["tight_edges"] = tight;
        }
        list.push_back(v);
    }
    r.results = {{"count", m.vertices.size()}, {"vertices", list}};
    if (m.is_instance())
        r.results["generic"] = dtp::check_genericity(*m.instance);
    return r;
}

RunReport cmd_distance(const Options& opt)
{
    RunReport r = make_report(opt);
    Model m = load_model(opt, opt.mode == "circuit", true);
    auto [source, si] = resolve_vertex(m, opt.from, "--from");
    auto [target, ti] = resolve_vertex(m, opt.to, "--to");
    r.results = {{"mode", opt.mode}, {"from", si}, {"to", ti}};
    if (opt.mode == "combinatorial")
    {
        auto dist = skeleton_distances(skeleton(m.polyhedron, m.vertices));
        r.results["distance"] = dist[si][ti].value();
        return r;
    }
    if (opt.mode != "circuit")
        throw ParseError("--mode must be circuit or combinatorial");
    std::size_t cap = opt.cap.value_or(default_cap(m));
    auto result = circuit_distances_from(m.polyhedron, m.circuits, source, {target}, cap).front();
    r.results["cap"] = cap;
    if (!result.resolved())
    {
        r.results["exceeded_cap"] = true;
        return r;
    }
    r.results["distance"] = result.distance;
    r.results["witness"] = io::walk_to_json(result.witness, m.is_instance());
    return r;
}

RunReport cmd_diameter(const Options& opt)
{
    RunReport r = make_report(opt);
    Model m = load_model(opt, opt.mode == "circuit", true);
    r.results = {{"mode", opt.mode}, {"vertices", m.vertices.size()}};
    if (m.is_instance())
    {
        const auto& G = m.instance->graph;
        r.results["circuit_bound"] = G.num_nodes() - 2;
        r.results["hirsch_bound"] = (G.M() - 1) * (G.N() - 1);
    }
    else
    {
        r.results["f_minus_n"] = m.polyhedron.num_rows() - m.polyhedron.dim();
    }
    if (opt.mode == "combinatorial")
    {
        r.results["diameter"] = combinatorial_diameter(m.polyhedron, m.vertices);
        return r;
    }
    if (opt.mode != "circuit")
        throw ParseError("--mode must be circuit or combinatorial");
    std::size_t cap = opt.cap.value_or(default_cap(m));
    auto result = circuit_diameter(m.polyhedron, m.circuits, m.vertices, cap);
    r.results["cap"] = cap;
    r.results["pair"] = json::array({result.from, result.to});
    if (result.exceeded)
        r.results["exceeded_cap"] = true;
    else
        r.results["diameter"] = result.diameter;
    return r;
}

RunReport cmd_dtp_walk(const Options& opt)
{
    RunReport r = make_report(opt);
    Model m = load_model(opt, true, true);
    if (!m.is_instance())
        throw ParseError("dtp-walk needs an instance file");
    const auto& inst = *m.instance;
    auto [u1, i1] = resolve_vertex(m, opt.from, "--from");
    auto [u2, i2] = resolve_vertex(m, opt.to, "--to");

    dtp::DtpWalk walk;
    std::size_t bound = 0;
    if (opt.certified)
    {
        auto cw = dtp::certified_walk(inst, u1, u2);
        walk = std::move(cw.walk);
        bound = cw.bound;
        r.results["common_edge"] = render_edge(inst.graph, cw.common_edge);
    }
    else
    {
        walk = dtp::constructive_walk(inst, u1, u2);
        bound = inst.num_nodes() - 1;
    }
    auto verdict = verify_walk(m.polyhedron, m.circuits, walk.walk);

    json steps = json::array();
    for (const auto& s : walk.info)
        steps.push_back({{"R", s.partition.R},
                         {"S", s.partition.S},
                         {"rs", json::array({s.r, s.s})},
                         {"sign", s.sign},
                         {"epsilon", to_string(s.epsilon)},
                         {"common_edges", s.common_edges}});
    r.results["certified"] = opt.certified;
    r.results["from"] = i1;
    r.results["to"] = i2;
    r.results["anchor"] = walk.root;
    r.results["length"] = walk.walk.length();
    r.results["bound"] = bound;
    r.results["within_bound"] = walk.walk.length() <= bound;
    r.results["verified"] = verdict.ok();
    if (!verdict.ok())
        r.results["violation"] = verdict.message;
    r.results["steps"] = steps;
    json walk_json = io::walk_to_json(walk.walk, true);
    r.results["walk"] = walk_json;
    if (!opt.output.empty())
        write_file(opt.output, walk_json.dump(2) + "\n");
    if (!verdict.ok() || walk.walk.length() > bound)
        r.exit_code = VerificationFailure;
    return r;
}

RunReport cmd_verify(const Options& opt)
{
    RunReport r = make_report(opt);
    if (!opt.walk.empty())
    {
        Model m = load_model(opt, true, false);
        auto walk = io::walk_from_json(json::parse(io::read_file(opt.walk)), m.is_instance());
        auto verdict = verify_walk(m.polyhedron, m.circuits, walk);
        r.results = {{"walk_length", walk.length()}, {"walk_ok", verdict.ok()}};
        if (!verdict.ok())
        {
            r.results["violation"] = verdict.message;
            r.exit_code = VerificationFailure;
        }
        return r;
    }

    dtp::CampaignConfig config;
    config.trials = opt.trials;
    config.max_m = opt.m;
    config.max_n = opt.n;
    config.seed = opt.seed;
    config.constructive = opt.constructive;
    if (opt.m == 0 || opt.n == 0)
        throw ParseError("--m and --n must be at least 1");
    if (opt.density != "vary")
        config.density = parse_rational(opt.density);
    auto result = dtp::run_campaign(config);

    json instances = json::array();
    for (const auto& s : result.instances)
    {
        json item{{"M", s.M},
                  {"N", s.N},
                  {"edges", s.edges},
                  {"density", to_string(s.density)},
                  {"seed", s.seed},
                  {"vertices", s.vertices},
                  {"max_certified_length", s.max_certified}};
        if (config.constructive)
            item["max_constructive_length"] = s.max_constructive;
        if (s.oracle_checked)
            item["circuit_sets_equal"] = s.oracle_match;
        if (!s.failures.empty())
            item["failures"] = s.failures;
        instances.push_back(item);
    }
    r.results = {{"trials", result.instances.size()},
                 {"walks", result.walks},
                 {"steps", result.steps},
                 {"bound_failures", result.bound_failures},
                 {"verify_failures", result.verify_failures},
                 {"step_failures", result.step_failures},
                 {"tree_pairs", result.lemma_pairs},
                 {"empty_intersections", result.lemma_failures},
                 {"oracle_instances", result.oracle_instances},
                 {"oracle_mismatches", result.oracle_mismatches},
                 {"passed", result.ok()},
                 {"instances", instances}};
    if (!result.ok())
        r.exit_code = VerificationFailure;
    return r;
}

RunReport cmd_gen(const Options& opt)
{
    RunReport r = make_report(opt);
    if (opt.m == 0 || opt.n == 0)
        throw ParseError("--m and --n must be at least 1");
    Rational density = density_or(opt, Rational(1, 2));
    if (density <= 0 || density > 1)
        throw ParseError("--density must lie in (0, 1]");
    auto inst = dtp::random_instance(opt.m, opt.n, density, opt.seed);
    json body = io::to_json(inst);
    r.results = {{"M", inst.graph.M()},
                 {"N", inst.graph.N()},
                 {"edges", inst.graph.num_edges()},
                 {"generic", dtp::check_genericity(inst)}};
    if (opt.output.empty())
        r.results["instance"] = body;
    else
    {
        write_file(opt.output, body.dump(2) + "\n");
        r.results["output"] = opt.output;
    }
    return r;
}

RunReport dispatch(const Options& opt)
{
    if (opt.command == "circuits")
        return cmd_circuits(opt);
    if (opt.command == "vertices")
        return cmd_vertices(opt);
    if (opt.command == "distance")
        return cmd_distance(opt);
    if (opt.command == "diameter")
        return cmd_diameter(opt);
    if (opt.command == "dtp-walk")
        return cmd_dtp_walk(opt);
    if (opt.command == "verify")
        return cmd_verify(opt);
    if (opt.command == "gen")
        return cmd_gen(opt);
    throw ParseError("unknown command \"" + opt.command + "\"");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Circuit walks, distances and diameters of polyhedra"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) { sub->add_option("--input", opt.input, "Polyhedron or instance JSON file"); };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--timing", opt.timing, "Include wall-clock time in the report");
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", opt.mode, "circuit or combinatorial")->check(CLI::IsMember({"circuit", "combinatorial"}));
    };
    auto add_cap = [&](CLI::App* sub) { sub->add_option("--cap", opt.cap, "Maximum walk length searched"); };
    auto add_endpoints = [&](CLI::App* sub) {
        sub->add_option("--from", opt.from, "Vertex index, coordinates p/q,... or tree:a-b,...");
        sub->add_option("--to", opt.to, "Vertex index, coordinates p/q,... or tree:a-b,...");
    };
    auto add_random = [&](CLI::App* sub) {
        sub->add_option("--m", opt.m, "Left node count (maximum for verify)");
        sub->add_option("--n", opt.n, "Right node count (maximum for verify)");
        sub->add_option("--density", opt.density, "Edge density p/q in (0,1], or 'vary'");
        sub->add_option("--seed", opt.seed, "Random seed");
    };

    auto* circuits = app.add_subcommand("circuits", "List circuits in canonical order");
    add_input(circuits);
    add_format(circuits);
    auto* vertices = app.add_subcommand("vertices", "List vertices in canonical order");
    add_input(vertices);
    add_format(vertices);
    auto* distance = app.add_subcommand("distance", "Circuit or edge distance between two vertices");
    add_input(distance);
    add_endpoints(distance);
    add_cap(distance);
    add_mode(distance);
    add_format(distance);
    auto* diameter = app.add_subcommand("diameter", "Circuit or combinatorial diameter");
    add_input(diameter);
    add_cap(diameter);
    add_mode(diameter);
    add_format(diameter);
    auto* walk = app.add_subcommand("dtp-walk", "Constructive walk on a dual transportation instance");
    add_input(walk);
    add_endpoints(walk);
    walk->add_flag("--certified", opt.certified, "Anchor at a common tree edge (|V|-2 bound)");
    walk->add_option("--output", opt.output, "Write the walk as JSON");
    add_format(walk);
    auto* verify = app.add_subcommand("verify", "Random certification campaign, or check a walk file");
    add_input(verify);
    verify->add_option("--walk", opt.walk, "Walk JSON to check against --input");
    verify->add_flag("--constructive", opt.constructive, "Also run and check the node-0 walk per pair");
    verify->add_option("--trials", opt.trials, "Number of random instances");
    add_random(verify);
    add_format(verify);
    auto* gen = app.add_subcommand("gen", "Write a random generic instance");
    add_random(gen);
    gen->add_option("--output", opt.output, "Instance file to write");
    add_format(gen);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? Success : InputError;
    }
    opt.command = app.get_subcommands().front()->get_name();

    try
    {
        auto start = std::chrono::steady_clock::now();
        RunReport report = dispatch(opt);
        if (opt.timing)
            report.timing_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (opt.format == "json")
            out << report.to_json().dump(2) << "\n";
        else
            out << render_text(report);
        return report.exit_code;
    }
    catch (const InternalInvariantViolation& e)
    {
        err << "verification failure: " << e.name() << ": " << e.what() << "\n";
        return VerificationFailure;
    }
    catch (const EmptyIntersection& e)
    {
        err << "verification failure: " << e.name() << ": " << e.what() << "\n";
        return VerificationFailure;
    }
    catch (const Error& e)
    {
        err << "error: " << e.name() << ": " << e.what() << "\n";
        return InputError;
    }
    catch (const nlohmann::json::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
}

}  // namespace circdiam::cli
