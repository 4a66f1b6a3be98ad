#include "avs/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace avs {

Belief::Belief(std::vector<int> particles) : particles_(std::move(particles)) {
    std::sort(particles_.begin(), particles_.end());
}

Belief Belief::uniform_over(const std::vector<int>& cells, int count, Rng& rng) {
    if (cells.empty()) throw std::invalid_argument("Belief::uniform_over: no cells");
    if (count < 1) throw std::invalid_argument("Belief::uniform_over: count must be >= 1");
    const int k = (int)cells.size();
    std::vector<int> particles;
    particles.reserve(count);
    const int base = count / k;
    for (int c : cells)
        for (int i = 0; i < base; ++i) particles.push_back(c);
    int rem = count - base * k;
    if (rem > 0) {
        // remainder goes to a random sample of distinct cells
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        for (int i = 0; i < rem; ++i) {
            const int j = i + rng.uniform_int(k - i);
            std::swap(idx[i], idx[j]);
            particles.push_back(cells[idx[i]]);
        }
    }
    return Belief(std::move(particles));
}

std::map<int, int> Belief::histogram() const {
    std::map<int, int> h;
    for (int c : particles_) ++h[c];
    return h;
}

int Belief::sample(Rng& rng) const {
    if (particles_.empty()) throw std::logic_error("Belief::sample: empty belief");
    return particles_[rng.uniform_int((int)particles_.size())];
}

Belief reinvigorate_two_step(const Belief& belief, const std::vector<SimRecord>& records,
                             Observation real_obs, const std::vector<int>& removed_candidates,
                             const std::vector<int>& new_candidates,
                             const std::vector<int>& all_candidates, double new_fraction,
                             Rng& rng) {
    if (new_fraction < 0.0 || new_fraction > 1.0)
        throw std::invalid_argument("reinvigorate_two_step: new_fraction outside [0,1]");

    std::unordered_map<int, int> contradicted; // cell -> contradicting record count
    for (const SimRecord& r : records)
        if (r.first_sim_observation != real_obs.detected) ++contradicted[r.initial_particle];
    const std::unordered_set<int> removed(removed_candidates.begin(), removed_candidates.end());

    // Step 1: per-instance deletion. Walking the sorted multiset and decrementing
    // the contradiction budget removes min(multiplicity, contradictions) per cell.
    std::vector<int> survivors;
    survivors.reserve(belief.size());
    for (int c : belief.particles()) {
        if (removed.count(c)) continue;
        auto it = contradicted.find(c);
        if (it != contradicted.end() && it->second > 0) {
            --it->second;
            continue;
        }
        survivors.push_back(c);
    }

    // Step 2: fresh particles on newly discovered candidate cells.
    if (!new_candidates.empty()) {
        const int n_new = (int)std::ceil(new_fraction * (double)survivors.size() - 1e-9);
        for (int i = 0; i < n_new; ++i)
            survivors.push_back(new_candidates[rng.uniform_int((int)new_candidates.size())]);
    }

    if (survivors.empty())
        return Belief::uniform_over(all_candidates, std::max<int>(1, (int)belief.size()), rng);
    return Belief(std::move(survivors));
}

Belief reinvigorate_original(const Belief& belief, const std::vector<SimRecord>& records,
                             Observation real_obs, const std::vector<int>& all_candidates,
                             Rng& rng) {
    std::unordered_set<int> matched;
    for (const SimRecord& r : records)
        if (r.first_sim_observation == real_obs.detected) matched.insert(r.initial_particle);

    std::vector<int> survivors;
    for (int c : belief.particles())
        if (matched.count(c)) survivors.push_back(c);

    const int target = std::max<int>(1, (int)belief.size());
    if (survivors.empty()) return Belief::uniform_over(all_candidates, target, rng);

    while ((int)survivors.size() < target)
        survivors.push_back(survivors[rng.uniform_int((int)survivors.size())]);
    return Belief(std::move(survivors));
}

Belief prune_to_candidates(const Belief& belief, const std::vector<int>& candidates, Rng& rng) {
    const std::unordered_set<int> keep(candidates.begin(), candidates.end());
    std::vector<int> survivors;
    survivors.reserve(belief.size());
    for (int c : belief.particles())
        if (keep.count(c)) survivors.push_back(c);
    if (survivors.empty())
        return Belief::uniform_over(candidates, std::max<int>(1, (int)belief.size()), rng);
    return Belief(std::move(survivors));
}

Belief resample_to(const Belief& belief, int count) {
    if (belief.empty()) throw std::logic_error("resample_to: empty belief");
    if (count < 1) throw std::invalid_argument("resample_to: count must be >= 1");

    const auto hist = belief.histogram();
    const double total = (double)belief.size();
    std::vector<int> out;
    out.reserve(count);

    // Largest-remainder apportionment; ties fall to lower cell index.
    std::vector<std::pair<double, int>> rema; // (-fraction, cell)
    int assigned = 0;
    for (const auto& [cell, n] : hist) {
        const double exact = count * (double)n / total;
        const int floor_n = (int)exact;
        for (int i = 0; i < floor_n; ++i) out.push_back(cell);
        assigned += floor_n;
        rema.emplace_back(-(exact - floor_n), cell);
    }
    std::sort(rema.begin(), rema.end());
    for (int i = 0; assigned < count; ++i, ++assigned) out.push_back(rema[i % rema.size()].second);
    return Belief(std::move(out));
}

} // namespace avs
