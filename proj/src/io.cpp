#include "circdiam/io.hpp"

#include <fstream>
#include <sstream>

#include "circdiam/errors.hpp"

namespace circdiam::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::size_t count_from_json(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

}  // namespace

json to_json(const Rational& x)
{
    return to_string(x);
}

json to_json(const Vector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

json to_json(const Point& p)
{
    return to_json(p.coords);
}

json to_json(const IntVector& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

Rational rational_from_json(const json& j, const std::string& where)
{
    if (j.is_string())
    {
        try
        {
            return parse_rational(j.get<std::string>());
        }
        catch (const ParseError& err)
        {
            throw ParseError(where + ": " + err.what());
        }
    }
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    throw ParseError(where + ": expected a rational string \"p/q\"");
}

Vector vector_from_json(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Polyhedron polyhedron_from_json(const json& j)
{
    const json& A = field(j, "A", "polyhedron");
    if (!A.is_array())
        throw ParseError("A: expected an array of rows");
    Matrix rows;
    for (std::size_t i = 0; i < A.size(); ++i)
        rows.push_back(vector_from_json(A[i], "A[" + std::to_string(i) + "]"));
    Vector b = vector_from_json(field(j, "b", "polyhedron"), "b");
    return Polyhedron(std::move(rows), std::move(b));
}

json to_json(const Polyhedron& P)
{
    json A = json::array();
    for (const auto& row : P.A())
        A.push_back(to_json(row));
    return json{{"A", A}, {"b", to_json(P.b())}};
}

dtp::DualTransportationInstance instance_from_json(const json& j)
{
    std::size_t M = count_from_json(field(j, "M", "instance"), "M");
    std::size_t N = count_from_json(field(j, "N", "instance"), "N");
    const json& edges = field(j, "edges", "instance");
    if (!edges.is_array())
        throw ParseError("edges: expected an array of [a, b] pairs");
    std::vector<dtp::Edge> list;
    for (std::size_t i = 0; i < edges.size(); ++i)
    {
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!edges[i].is_array() || edges[i].size() != 2)
            throw ParseError(where + ": expected [a, b]");
        list.push_back({count_from_json(edges[i][0], where + "[0]"), count_from_json(edges[i][1], where + "[1]")});
    }
    Vector costs = vector_from_json(field(j, "costs", "instance"), "costs");
    if (costs.size() != list.size())
        throw ParseError("costs: " + std::to_string(costs.size()) + " entries for " + std::to_string(list.size())
                         + " edges");
    try
    {
        return dtp::DualTransportationInstance(dtp::BipartiteGraph(M, N, std::move(list)), std::move(costs));
    }
    catch (const InvalidGraph& err)
    {
        throw ParseError(std::string("edges: ") + err.what());
    }
}

json to_json(const dtp::DualTransportationInstance& inst)
{
    json edges = json::array();
    for (const auto& e : inst.graph.edges())
        edges.push_back({e.a, e.b});
    return json{{"M", inst.graph.M()}, {"N", inst.graph.N()}, {"edges", edges}, {"costs", to_json(inst.costs)}};
}

InputModel parse_model(const std::string& text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& err)
    {
        // nlohmann reports a byte offset; translate it to a line number.
        std::size_t line = 1;
        for (std::size_t k = 0; k < std::min<std::size_t>(err.byte, text.size()); ++k)
            line += text[k] == '\n' ? 1 : 0;
        throw ParseError("line " + std::to_string(line) + ": " + err.what());
    }
    if (j.is_object() && j.contains("A"))
        return polyhedron_from_json(j);
    if (j.is_object() && j.contains("M"))
        return instance_from_json(j);
    throw ParseError("input is neither a polyhedron (\"A\", \"b\") nor an instance (\"M\", \"N\", \"edges\", \"costs\")");
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json walk_to_json(const CircuitWalk& walk, bool leading_zero)
{
    json points = json::array();
    for (const auto& p : walk.points)
    {
        Vector v = p.coords;
        if (leading_zero)
            v.insert(v.begin(), Rational(0));
        points.push_back(to_json(v));
    }
    json steps = json::array();
    for (const auto& s : walk.steps)
    {
        IntVector g = s.direction.vector();
        if (leading_zero)
            g.insert(g.begin(), Integer(0));
        steps.push_back(json{{"direction", to_json(g)}, {"alpha", to_string(s.alpha)}});
    }
    return json{{"length", walk.length()}, {"points", points}, {"steps", steps}};
}

CircuitWalk walk_from_json(const json& j, bool leading_zero)
{
    auto strip = [&](Vector v, const std::string& where) {
        if (leading_zero)
        {
            if (v.empty() || !is_zero(v.front()))
                throw ParseError(where + ": first coordinate (node 0) must be 0");
            v.erase(v.begin());
        }
        return v;
    };
    CircuitWalk walk;
    const json& points = field(j, "points", "walk");
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        std::string where = "points[" + std::to_string(i) + "]";
        walk.points.emplace_back(strip(vector_from_json(points[i], where), where));
    }
    const json& steps = field(j, "steps", "walk");
    for (std::size_t i = 0; i < steps.size(); ++i)
    {
        std::string where = "steps[" + std::to_string(i) + "]";
        Vector dir = strip(vector_from_json(field(steps[i], "direction", where), where + ".direction"), where);
        auto canon = CircuitDirection::from_vector(dir);
        if (!canon)
            throw ParseError(where + ".direction: zero vector");
        Rational alpha = rational_from_json(field(steps[i], "alpha", where), where + ".alpha");
        // A non-primitive direction is rescaled so that alpha * direction is unchanged.
        for (std::size_t k = 0; k < dir.size(); ++k)
            if (canon->first.entries()[k] != 0)
            {
                Rational ratio = dir[k] / Rational(canon->first.entries()[k] * canon->second);
                alpha *= ratio;
                break;
            }
        walk.steps.push_back({SignedCircuit{canon->first, canon->second}, alpha});
    }
    return walk;
}

}  // namespace circdiam::io
