#ifndef CIRCDIAM_CAMPAIGN_HPP
#define CIRCDIAM_CAMPAIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circdiam/dual_transportation.hpp"

namespace circdiam::dtp {

/**
 * Seeded batch of random generic instances. Each trial draws M in
 * [min(2, max_m), max_m], N likewise, and a density from {1/4, 1/2, 3/4, 1}
 * unless one is fixed.
 */
struct CampaignConfig
{
    std::size_t trials = 200;
    std::size_t max_m = 6;
    std::size_t max_n = 6;
    std::optional<Rational> density;
    std::uint64_t seed = 1;
    std::size_t oracle_max_nodes = 7;   ///< circuit-set equivalence when M + N <= this
    bool constructive = false;          ///< also run the |V| - 1 walk per pair
};

struct InstanceSummary
{
    std::size_t M = 0;
    std::size_t N = 0;
    std::size_t edges = 0;
    Rational density;
    std::uint64_t seed = 0;
    std::size_t vertices = 0;
    std::size_t max_certified = 0;
    std::size_t max_constructive = 0;
    bool oracle_checked = false;
    bool oracle_match = true;
    std::vector<std::string> failures;
};

struct CampaignResult
{
    std::vector<InstanceSummary> instances;
    std::size_t walks = 0;              ///< certified plus constructive walks built
    std::size_t steps = 0;
    std::size_t bound_failures = 0;     ///< walk longer than its bound
    std::size_t verify_failures = 0;    ///< verify_walk rejected a walk
    std::size_t step_failures = 0;      ///< epsilon = 0, wrong edge tightened, or other invariant break
    std::size_t lemma_pairs = 0;
    std::size_t lemma_failures = 0;     ///< EmptyIntersection
    std::size_t oracle_instances = 0;
    std::size_t oracle_mismatches = 0;

    bool ok() const
    {
        return bound_failures + verify_failures + step_failures + lemma_failures + oracle_mismatches == 0;
    }
};

/// Instance parameters of every trial, in order, without building the walks.
std::vector<InstanceSummary> campaign_plan(const CampaignConfig& config);

CampaignResult run_campaign(const CampaignConfig& config);

/// Checks every ordered vertex pair of one instance and adds to `result`.
InstanceSummary check_instance(const DualTransportationInstance& inst, const CampaignConfig& config,
                               CampaignResult& result);

}  // namespace circdiam::dtp

#endif
