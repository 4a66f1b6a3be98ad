#pragma once

#include <map>
#include <string>
#include <vector>

#include "avs/metrics.hpp"

namespace avs {

// One agent configuration in the benchmark matrix.
struct AgentSpec {
    std::string name; // CSV/report identifier, e.g. "pomp++"
    AgentKind kind = AgentKind::Pompp;
    EpisodeConfig cfg;
};

struct BenchEpisode {
    std::string agent;
    std::string scene_id;
    uint64_t seed = 0; // episode index folded into the config seed
    EpisodeResult result;
    double spl_term = 0.0;
    double dts_m = 0.0;

    bool operator==(const BenchEpisode&) const = default;
};

// Runs one agent over scenes x seeds_per_scene episodes. Episode i gets the
// rng stream derived from (cfg.seed, i); episodes are independent, so results
// do not depend on the worker count. workers > 1 fans episodes out with
// OpenMP.
std::vector<BenchEpisode> run_agent_on_scenes(const AgentSpec& spec,
                                              const std::vector<Scene>& scenes,
                                              const std::vector<std::string>& scene_ids,
                                              int seeds_per_scene, int workers = 1,
                                              bool geodesic_dts = true);

// The standard four-agent benchmark matrix derived from a base config:
// pomp++, pomp-original-reinvig, random, frontier.
std::vector<AgentSpec> default_matrix(const EpisodeConfig& base);

MetricSummary summarize_agent(const std::vector<BenchEpisode>& episodes,
                              const std::string& agent, const std::vector<Scene>& scenes,
                              const std::vector<std::string>& scene_ids, double d_s,
                              bool geodesic_dts = true);

// CSV report: one row per episode
//   agent,scene,seed,success,steps,shortest,spl_term,dts,wall_per_step
// followed by a blank line and aggregate rows "agent,metric,value" (value is
// NA for undefined metrics). Numbers round-trip exactly.
std::string bench_csv(const std::vector<BenchEpisode>& episodes,
                      const std::vector<Scene>& scenes,
                      const std::vector<std::string>& scene_ids, double d_s,
                      bool geodesic_dts = true);

struct CsvRow {
    std::string agent;
    std::string scene;
    uint64_t seed = 0;
    int success = 0;
    int steps = 0;
    int shortest = 0;
    double spl_term = 0.0;
    double dts = 0.0;
    double wall_per_step = 0.0;

    bool operator==(const CsvRow&) const = default;
};

struct ParsedCsv {
    std::vector<CsvRow> rows;
    std::map<std::pair<std::string, std::string>, std::string> aggregates;
};
ParsedCsv parse_bench_csv(const std::string& text);

} // namespace avs
