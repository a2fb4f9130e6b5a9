#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "circdiam/commands.hpp"
#include "support.hpp"

using namespace circdiam;
using namespace testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
    json report() const { return json::parse(out); }
};

Run invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch()
{
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("circdiam_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

fs::path write(const std::string& name, const std::string& text)
{
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) { return io::read_file(p); }

}  // namespace

TEST_CASE("model parsing")
{
    auto m = io::parse_model(slurp(data_path("example1.json")));
    REQUIRE(std::holds_alternative<Polyhedron>(m));
    CHECK(std::get<Polyhedron>(m).num_rows() == 6);

    auto i = io::parse_model(slurp(data_path("path_instance.json")));
    REQUIRE(std::holds_alternative<dtp::DualTransportationInstance>(i));

    try
    {
        io::parse_model("{\"A\": [[\"1\"]],\n \"b\": [1,\n");
        FAIL("expected ParseError");
    }
    catch (const ParseError& e)
    {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try
    {
        io::parse_model(R"({"A": [["1"], ["-1"]], "b": ["1", "x"]})");
        FAIL("expected ParseError");
    }
    catch (const ParseError& e)
    {
        CHECK(std::string(e.what()).find("b[1]") != std::string::npos);
    }
    try
    {
        io::parse_model(R"({"M": 1, "N": 1, "edges": [[0, 1]]})");
        FAIL("expected ParseError");
    }
    catch (const ParseError& e)
    {
        CHECK(std::string(e.what()).find("costs") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_model(R"({"hello": 1})"), ParseError);
    CHECK_THROWS_AS(io::parse_model(R"({"A": [["1", "0"]], "b": ["1"]})"), RankDeficient);
}

TEST_CASE("json round trips")
{
    Polyhedron P = example1();
    Polyhedron Q = io::polyhedron_from_json(io::to_json(P));
    CHECK(Q.A() == P.A());
    CHECK(Q.b() == P.b());

    auto inst = dtp::random_instance(3, 2, Rational(1, 2), 8);
    auto back = io::instance_from_json(io::to_json(inst));
    CHECK(back.graph.edges() == inst.graph.edges());
    CHECK(back.costs == inst.costs);

    CHECK(io::to_json(Rational(-3, 4)) == "-3/4");
    CHECK(io::rational_from_json("5", "x") == 5);
    CHECK(io::rational_from_json(7, "x") == 7);

    auto w = circuit_distance(P, v1(), v4(), 4).witness;
    CircuitWalk again = io::walk_from_json(io::walk_to_json(w));
    CHECK(again.points == w.points);
    CHECK(again.steps.size() == w.steps.size());
    for (std::size_t k = 0; k < w.steps.size(); ++k)
    {
        CHECK(again.steps[k].direction == w.steps[k].direction);
        CHECK(again.steps[k].alpha == w.steps[k].alpha);
    }

    auto V = dtp::enumerate_vertices(inst);
    auto cw = dtp::certified_walk(inst, V.front(), V.back());
    json j = io::walk_to_json(cw.walk.walk, true);
    CHECK(j["points"][0][0] == "0");
    CircuitWalk dw = io::walk_from_json(j, true);
    CHECK(dw.points == cw.walk.walk.points);
    CHECK(verify_walk(dtp::build_polyhedron(inst), dtp::graph_circuit_set(inst.graph), dw).ok());
}

TEST_CASE("circuits command")
{
    auto r = invoke({"circuits", "--input", data_path("example1.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["count"] == 4);

    r = invoke({"circuits", "--input", data_path("path_instance.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["count"] == 2);
    CHECK(r.report()["results"]["circuits"][0].contains("R"));

    auto bad = write("bad.json", "{\"A\": [[\"1\"]],\n \"b\": [1,\n");
    r = invoke({"circuits", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("ParseError") != std::string::npos);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = invoke({"circuits", "--input", (scratch() / "missing.json").string()});
    CHECK(r.code == 2);
}

TEST_CASE("distance and diameter commands")
{
    auto r = invoke({"distance", "--input", data_path("example1.json"), "--from", "0,1", "--to", "5,-1", "--cap", "4",
                     "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["distance"] == 2);
    CHECK(r.report()["results"]["witness"]["length"] == 2);

    r = invoke({"distance", "--input", data_path("example1.json"), "--from", "5", "--to", "1", "--cap", "4", "--format",
                "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["distance"] == 3);

    r = invoke({"distance", "--input", data_path("example1.json"), "--from", "5", "--to", "1", "--mode", "combinatorial",
                "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["distance"] == 3);

    r = invoke({"distance", "--input", data_path("example1.json"), "--from", "5", "--to", "1", "--cap", "2", "--format",
                "json"});
    CHECK(r.code == 0);
    CHECK(r.report()["results"]["exceeded_cap"] == true);

    r = invoke({"distance", "--input", data_path("example1.json"), "--from", "1,0", "--to", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NotAVertex") != std::string::npos);

    r = invoke({"diameter", "--input", data_path("example1.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["diameter"] == 3);
    r = invoke({"diameter", "--input", data_path("example2.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["diameter"] == 2);
    r = invoke({"diameter", "--input", data_path("example1.json"), "--mode", "combinatorial", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["diameter"] == 3);

    r = invoke({"vertices", "--input", data_path("example2.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.report()["results"]["count"] == 6);
}

TEST_CASE("dtp-walk command and walk files")
{
    auto inst_path = scratch() / "k33.json";
    auto g = invoke({"gen", "--m", "3", "--n", "3", "--density", "1", "--seed", "4", "--output", inst_path.string()});
    REQUIRE(g.code == 0);

    auto same = invoke({"dtp-walk", "--input", inst_path.string(), "--from", "2", "--to", "2", "--format", "json"});
    REQUIRE(same.code == 0);
    CHECK(same.report()["results"]["length"] == 0);

    auto walk_path = scratch() / "walk.json";
    auto r = invoke({"dtp-walk", "--input", inst_path.string(), "--from", "0", "--to", "5", "--certified", "--format",
                     "json", "--output", walk_path.string()});
    REQUIRE(r.code == 0);
    auto res = r.report()["results"];
    CHECK(res["bound"] == 4);
    CHECK(res["length"].get<int>() <= 4);
    for (const auto& step : res["steps"])
    {
        CHECK(step.contains("rs"));
        CHECK(step.contains("R"));
        CHECK(step.contains("S"));
    }

    auto v = invoke({"verify", "--input", inst_path.string(), "--walk", walk_path.string(), "--format", "json"});
    CHECK(v.code == 0);
    CHECK(v.report()["results"]["walk_ok"] == true);

    // Tamper with one step length.
    json walk = json::parse(slurp(walk_path));
    walk["steps"][0]["alpha"] = "1/1000";
    auto tampered = write("tampered.json", walk.dump());
    v = invoke({"verify", "--input", inst_path.string(), "--walk", tampered.string(), "--format", "json"});
    CHECK(v.code == 1);
    CHECK(v.report()["results"]["walk_ok"] == false);

    // Trees address vertices too.
    auto inst = io::instance_from_json(json::parse(slurp(inst_path)));
    auto V = dtp::enumerate_vertices(inst);
    std::string tree = "tree:";
    for (auto e : dtp::tree_from_vertex(inst, V[3]).edges)
    {
        const auto& edge = inst.graph.edge(e);
        tree += (tree.size() > 5 ? "," : "") + std::to_string(edge.a) + "-" + std::to_string(edge.b);
    }
    auto by_tree = invoke({"dtp-walk", "--input", inst_path.string(), "--from", tree, "--to", "3", "--format", "json"});
    REQUIRE(by_tree.code == 0);
    CHECK(by_tree.report()["results"]["length"] == 0);

    auto degenerate = invoke({"dtp-walk", "--input", data_path("k22_degenerate.json"), "--from", "0", "--to", "0"});
    CHECK(degenerate.code == 2);
    CHECK(degenerate.err.find("DegenerateVertex") != std::string::npos);
    CHECK(degenerate.err.find("(0,0,0)") != std::string::npos);
}

TEST_CASE("gen is byte-stable")
{
    auto a = scratch() / "a.json";
    auto b = scratch() / "b.json";
    REQUIRE(invoke({"gen", "--m", "3", "--n", "3", "--density", "1", "--seed", "9", "--output", a.string()}).code == 0);
    REQUIRE(invoke({"gen", "--m", "3", "--n", "3", "--density", "1", "--seed", "9", "--output", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    auto inst = io::instance_from_json(json::parse(slurp(a)));
    CHECK(inst.graph.num_edges() == 9);

    auto one = scratch() / "one.json";
    REQUIRE(invoke({"gen", "--m", "1", "--n", "1", "--density", "1", "--seed", "2", "--output", one.string()}).code == 0);
    CHECK(io::instance_from_json(json::parse(slurp(one))).graph.num_edges() == 1);
}

TEST_CASE("verify campaign command")
{
    auto trivial = invoke({"verify", "--trials", "1", "--m", "1", "--n", "1", "--format", "json"});
    CHECK(trivial.code == 0);
    CHECK(trivial.report()["results"]["passed"] == true);

    std::vector<std::string> args{"verify", "--trials", "4", "--m", "3", "--n", "3", "--seed", "5", "--format", "json"};
    auto first = invoke(args);
    auto second = invoke(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.report()["results"]["verify_failures"] == 0);

    auto with_constructive = invoke({"verify", "--trials", "3", "--m", "3", "--n", "3", "--constructive", "--format",
                                     "json"});
    CHECK(with_constructive.code == 0);
    CHECK(with_constructive.report()["results"]["instances"][0].contains("max_constructive_length"));

    auto timed = invoke({"verify", "--trials", "1", "--m", "2", "--n", "2", "--timing", "--format", "json"});
    CHECK(timed.report().contains("timing_ms"));
    CHECK_FALSE(first.report().contains("timing_ms"));
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({"distance", "--input", data_path("example1.json"), "--mode", "sideways", "--from", "0", "--to", "1"}).code
          == 2);
    CHECK(invoke({"verify", "--trials", "1", "--density", "3/2"}).code == 2);
    CHECK(invoke({}).code == 2);
}
