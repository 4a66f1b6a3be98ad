#include "avs/bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace avs {

namespace {

double episode_spl_term(const EpisodeResult& r) {
    if (!r.success) return 0.0;
    const double denom = (double)std::max(r.steps_taken, r.shortest_path_len);
    return denom <= 0.0 ? 1.0 : (double)r.shortest_path_len / denom;
}

double episode_dts(const EpisodeResult& r, const Scene& s, double d_s, bool geodesic) {
    const Pose final = r.path.back();
    const int cell = s.index(final.x, final.y);
    const double d = geodesic ? geodesic_distance_m(s, cell, s.object_cell)
                              : std::hypot((double)(final.x - s.cell_x(s.object_cell)),
                                           (double)(final.y - s.cell_y(s.object_cell))) *
                                    s.resolution;
    return std::max(d - d_s, 0.0);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::vector<BenchEpisode> run_agent_on_scenes(const AgentSpec& spec,
                                              const std::vector<Scene>& scenes,
                                              const std::vector<std::string>& scene_ids,
                                              int seeds_per_scene, int workers,
                                              bool geodesic_dts) {
    if (scenes.size() != scene_ids.size())
        throw std::invalid_argument("run_agent_on_scenes: scenes/ids size mismatch");
    const int total = (int)scenes.size() * seeds_per_scene;
    std::vector<BenchEpisode> out(total);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, workers)) if (workers > 1)
#endif
    for (int i = 0; i < total; ++i) {
        const int scene_idx = i / seeds_per_scene;
        EpisodeConfig cfg = spec.cfg;
        cfg.seed = Rng::derive(spec.cfg.seed, (uint64_t)i).next_u64();
        BenchEpisode ep;
        ep.agent = spec.name;
        ep.scene_id = scene_ids[scene_idx];
        ep.seed = (uint64_t)i;
        ep.result = run_agent(spec.kind, scenes[scene_idx], cfg);
        ep.spl_term = episode_spl_term(ep.result);
        ep.dts_m = episode_dts(ep.result, scenes[scene_idx], spec.cfg.success_distance,
                               geodesic_dts);
        out[i] = std::move(ep);
    }
    return out;
}

std::vector<AgentSpec> default_matrix(const EpisodeConfig& base) {
    AgentSpec pompp{"pomp++", AgentKind::Pompp, base};
    pompp.cfg.reinvigoration = ReinvigorationStrategy::TwoStep;
    AgentSpec original{"pomp-original-reinvig", AgentKind::Pompp, base};
    original.cfg.reinvigoration = ReinvigorationStrategy::Original;
    AgentSpec random{"random", AgentKind::RandomWalk, base};
    AgentSpec frontier{"frontier", AgentKind::GreedyFrontier, base};
    return {pompp, original, random, frontier};
}

MetricSummary summarize_agent(const std::vector<BenchEpisode>& episodes,
                              const std::string& agent, const std::vector<Scene>& scenes,
                              const std::vector<std::string>& scene_ids, double d_s,
                              bool geodesic_dts) {
    std::vector<EpisodeResult> results;
    std::vector<const Scene*> eps_scenes;
    for (const auto& ep : episodes) {
        if (ep.agent != agent) continue;
        results.push_back(ep.result);
        const Scene* scene = nullptr;
        for (size_t i = 0; i < scene_ids.size(); ++i)
            if (scene_ids[i] == ep.scene_id) scene = &scenes[i];
        if (!scene) throw std::invalid_argument("summarize_agent: unknown scene id");
        eps_scenes.push_back(scene);
    }
    return summarize(results, eps_scenes, d_s, geodesic_dts);
}

std::string bench_csv(const std::vector<BenchEpisode>& episodes,
                      const std::vector<Scene>& scenes,
                      const std::vector<std::string>& scene_ids, double d_s,
                      bool geodesic_dts) {
    std::string out = "agent,scene,seed,success,steps,shortest,spl_term,dts,wall_per_step\n";
    std::vector<std::string> agents;
    for (const auto& ep : episodes) {
        out += ep.agent + ',' + ep.scene_id + ',' + std::to_string(ep.seed) + ',' +
               (ep.result.success ? "1" : "0") + ',' + std::to_string(ep.result.steps_taken) +
               ',' + std::to_string(ep.result.shortest_path_len) + ',' + fmt(ep.spl_term) + ',' +
               fmt(ep.dts_m) + ',' + fmt(ep.result.wall_time_per_step) + '\n';
        bool known = false;
        for (const auto& a : agents) known |= a == ep.agent;
        if (!known) agents.push_back(ep.agent);
    }
    out += "\nagent,metric,value\n";
    for (const auto& agent : agents) {
        const MetricSummary m = summarize_agent(episodes, agent, scenes, scene_ids, d_s,
                                                geodesic_dts);
        const auto emit = [&](const char* metric, const std::string& value) {
            out += agent + ',' + metric + ',' + value + '\n';
        };
        emit("sr", fmt(m.sr));
        emit("apl", m.apl ? fmt(*m.apl) : "NA");
        emit("asppl_mean", m.asppl_mean ? fmt(*m.asppl_mean) : "NA");
        emit("asppl_std", m.asppl_std ? fmt(*m.asppl_std) : "NA");
        emit("spl", fmt(m.spl));
        emit("dts_mean", fmt(m.dts_mean));
        emit("runtime_per_step_mean", fmt(m.runtime_per_step_mean));
    }
    return out;
}

ParsedCsv parse_bench_csv(const std::string& text) {
    ParsedCsv out;
    std::istringstream in(text);
    std::string line;
    int section = 0; // 0 episode rows, 1 aggregates
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            section = 1;
            header_seen = false;
            continue;
        }
        if (!header_seen) {
            header_seen = true; // skip section headers
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (section == 0) {
            if (fields.size() != 9) throw std::invalid_argument("parse_bench_csv: bad row");
            CsvRow row;
            row.agent = fields[0];
            row.scene = fields[1];
            row.seed = std::stoull(fields[2]);
            row.success = std::stoi(fields[3]);
            row.steps = std::stoi(fields[4]);
            row.shortest = std::stoi(fields[5]);
            row.spl_term = std::stod(fields[6]);
            row.dts = std::stod(fields[7]);
            row.wall_per_step = std::stod(fields[8]);
            out.rows.push_back(std::move(row));
        } else {
            if (fields.size() != 3) throw std::invalid_argument("parse_bench_csv: bad aggregate");
            out.aggregates[{fields[0], fields[1]}] = fields[2];
        }
    }
    return out;
}

} // namespace avs
