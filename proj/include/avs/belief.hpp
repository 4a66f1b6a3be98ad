#pragma once

#include <map>
#include <vector>

#include "avs/pomdp.hpp"
#include "avs/rng.hpp"

namespace avs {

// Bookkeeping for one planner simulation: which particle seeded it and what
// the first simulated observation was. Reinvigoration consumes these.
struct SimRecord {
    int initial_particle = -1;
    bool first_sim_observation = false;
};

// Particle multiset over candidate object cells. Particles are kept sorted,
// which is the canonical representation golden tests compare against.
// Values are immutable; every update returns a new Belief.
class Belief {
  public:
    Belief() = default;
    explicit Belief(std::vector<int> particles);

    // `count` particles spread evenly over `cells`; the remainder after the
    // even split lands on rng-chosen distinct cells.
    static Belief uniform_over(const std::vector<int>& cells, int count, Rng& rng);

    bool empty() const { return particles_.empty(); }
    size_t size() const { return particles_.size(); }
    const std::vector<int>& particles() const { return particles_; }
    std::map<int, int> histogram() const;

    // Uniform draw over the multiset (weight = multiplicity). Throws on empty.
    int sample(Rng& rng) const;

    bool operator==(const Belief&) const = default;

  private:
    std::vector<int> particles_;
};

// The two-step reinvigoration. Step 1 carries every particle over, then
// deletes (a) one instance per contradicting simulation record, i.e. records
// whose first simulated observation differs from the real one, and (b) all
// particles on removed_candidates. Step 2 adds ceil(new_fraction * survivors)
// particles uniformly over new_candidates (skipped when empty). An empty
// result falls back to uniform over all_candidates at the input count.
Belief reinvigorate_two_step(const Belief& belief, const std::vector<SimRecord>& records,
                             Observation real_obs, const std::vector<int>& removed_candidates,
                             const std::vector<int>& new_candidates,
                             const std::vector<int>& all_candidates, double new_fraction,
                             Rng& rng);

// The classic strategy kept as the ablation baseline: keep only particles
// whose cell seeded a simulation matching the real observation, refill to the
// input count by resampling survivors; uniform fallback when none survive.
Belief reinvigorate_original(const Belief& belief, const std::vector<SimRecord>& records,
                             Observation real_obs, const std::vector<int>& all_candidates,
                             Rng& rng);

// Drops particles whose cell is not in `candidates`; if nothing is left the
// belief re-initializes uniformly over `candidates`, count preserved.
Belief prune_to_candidates(const Belief& belief, const std::vector<int>& candidates, Rng& rng);

// Deterministic resize to `count` particles preserving cell proportions
// (largest-remainder apportionment). Throws on empty input.
Belief resample_to(const Belief& belief, int count);

} // namespace avs
