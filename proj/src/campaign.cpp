#include "circdiam/campaign.hpp"

#include <random>

#include "circdiam/errors.hpp"

namespace circdiam::dtp {

namespace {

std::string pair_name(std::size_t i, std::size_t j)
{
    return "(" + std::to_string(i) + "->" + std::to_string(j) + ")";
}

/// Common checks on one constructive or certified walk; returns false on any failure.
bool check_walk(const Polyhedron& P, const CircuitSet& circuits,
                const DtpWalk& w, std::size_t bound, const std::string& label, InstanceSummary& summary,
                CampaignResult& result)
{
    bool ok = true;
    ++result.walks;
    result.steps += w.walk.length();
    if (w.walk.length() > bound)
    {
        ++result.bound_failures;
        summary.failures.push_back(label + ": length " + std::to_string(w.walk.length()) + " > "
                                   + std::to_string(bound));
        ok = false;
    }
    auto verdict = verify_walk(P, circuits, w.walk);
    if (!verdict.ok())
    {
        ++result.verify_failures;
        summary.failures.push_back(label + ": " + verdict.message);
        ok = false;
    }
    for (std::size_t i = 0; i < w.info.size(); ++i)
    {
        const auto& step = w.info[i];
        bool step_ok = step.epsilon > 0 && step.newly_tight.size() == 1 && step.newly_tight.front() == step.target_edge
                       && step.common_edges >= i + 1;
        if (!step_ok)
        {
            ++result.step_failures;
            summary.failures.push_back(label + ": step " + std::to_string(i) + " invariant");
            ok = false;
        }
    }
    return ok;
}

}  // namespace

std::vector<InstanceSummary> campaign_plan(const CampaignConfig& config)
{
    static const Rational densities[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    std::mt19937_64 rng(config.seed);
    const std::size_t lo_m = std::min<std::size_t>(2, config.max_m);
    const std::size_t lo_n = std::min<std::size_t>(2, config.max_n);
    std::vector<InstanceSummary> plan;
    for (std::size_t t = 0; t < config.trials; ++t)
    {
        InstanceSummary s;
        s.M = lo_m + rng() % (config.max_m - lo_m + 1);
        s.N = lo_n + rng() % (config.max_n - lo_n + 1);
        Rational drawn = densities[rng() % 4];
        s.density = config.density ? *config.density : drawn;
        s.seed = rng();
        plan.push_back(std::move(s));
    }
    return plan;
}

InstanceSummary check_instance(const DualTransportationInstance& inst, const CampaignConfig& config,
                               CampaignResult& result)
{
    InstanceSummary summary;
    summary.M = inst.graph.M();
    summary.N = inst.graph.N();
    summary.edges = inst.graph.num_edges();
    const std::size_t V = inst.num_nodes();

    Polyhedron P = build_polyhedron(inst);
    CircuitSet circuits = graph_circuit_set(inst.graph);
    auto vertices = enumerate_vertices(inst);
    summary.vertices = vertices.size();

    if (V <= config.oracle_max_nodes)
    {
        summary.oracle_checked = true;
        ++result.oracle_instances;
        summary.oracle_match = enumerate_circuits(P) == circuits;
        if (!summary.oracle_match)
        {
            ++result.oracle_mismatches;
            summary.failures.push_back("circuit sets differ");
        }
    }

    std::vector<SpanningTree> trees;
    trees.reserve(vertices.size());
    for (const auto& v : vertices)
        trees.push_back(tree_from_vertex(inst, v));

    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < vertices.size(); ++j)
        {
            ++result.lemma_pairs;
            try
            {
                common_tree_edge(inst.graph, trees[i], trees[j]);
            }
            catch (const EmptyIntersection&)
            {
                ++result.lemma_failures;
                summary.failures.push_back("trees share no edge " + pair_name(i, j));
            }

            try
            {
                auto cw = certified_walk(inst, vertices[i], vertices[j], trees[i], trees[j]);
                summary.max_certified = std::max(summary.max_certified, cw.walk.walk.length());
                check_walk(P, circuits, cw.walk, V - 2, "certified " + pair_name(i, j), summary, result);
            }
            catch (const Error& err)
            {
                ++result.walks;
                ++result.step_failures;
                summary.failures.push_back("certified " + pair_name(i, j) + ": " + err.what());
            }

            if (!config.constructive)
                continue;
            try
            {
                auto w = constructive_walk(inst, vertices[i], vertices[j], trees[j]);
                summary.max_constructive = std::max(summary.max_constructive, w.walk.length());
                check_walk(P, circuits, w, V - 1, "constructive " + pair_name(i, j), summary, result);
            }
            catch (const Error& err)
            {
                ++result.walks;
                ++result.step_failures;
                summary.failures.push_back("constructive " + pair_name(i, j) + ": " + err.what());
            }
        }
    return summary;
}

CampaignResult run_campaign(const CampaignConfig& config)
{
    CampaignResult result;
    for (auto& planned : campaign_plan(config))
    {
        auto inst = random_instance(planned.M, planned.N, planned.density, planned.seed);
        auto summary = check_instance(inst, config, result);
        summary.density = planned.density;
        summary.seed = planned.seed;
        result.instances.push_back(std::move(summary));
    }
    return result;
}

}  // namespace circdiam::dtp
