#include <doctest.h>

#include <algorithm>
#include <map>

#include "avs/belief.hpp"

using namespace avs;

namespace {

Belief make(std::initializer_list<std::pair<int, int>> hist) {
    std::vector<int> p;
    for (auto [cell, n] : hist)
        for (int i = 0; i < n; ++i) p.push_back(cell);
    return Belief(std::move(p));
}

std::vector<SimRecord> records_of(int cell, bool obs, int count) {
    return std::vector<SimRecord>((size_t)count, SimRecord{cell, obs});
}

} // namespace

TEST_SUITE("belief") {

TEST_CASE("sample: weighted by multiplicity") {
    const Belief b = make({{7, 3}, {9, 1}});
    Rng rng(1001);
    int hits = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i)
        if (b.sample(rng) == 7) ++hits;
    CHECK(std::abs(hits / (double)n - 0.75) < 0.02);
}

TEST_CASE("sample: single particle and uniform spread") {
    const Belief one = make({{4, 1}});
    Rng rng(5);
    for (int i = 0; i < 100; ++i) CHECK(one.sample(rng) == 4);

    const Belief u = make({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    std::map<int, int> freq;
    const int n = 50000;
    for (int i = 0; i < n; ++i) ++freq[u.sample(rng)];
    const double sigma = std::sqrt(0.2 * 0.8 / n);
    for (int c = 0; c < 5; ++c)
        CHECK(std::abs(freq[c] / (double)n - 0.2) < 3.0 * sigma + 1e-12);

    CHECK_THROWS_AS(Belief().sample(rng), std::logic_error);
}

TEST_CASE("two-step: contradicting simulations remove their particles") {
    const Belief b = make({{1, 5}, {2, 5}});
    Rng rng(7);
    // c2 seeded simulations that predicted a detection the robot did not make
    const Belief next = reinvigorate_two_step(b, records_of(2, true, 8), Observation{false}, {},
                                              {}, {1, 2}, 0.2, rng);
    CHECK(next.histogram() == std::map<int, int>{{1, 5}});
}

TEST_CASE("two-step: removal is per particle instance") {
    const Belief b = make({{1, 5}, {2, 5}});
    Rng rng(7);
    auto recs = records_of(2, true, 2); // only two contradicting draws
    recs.push_back({2, false});         // matching draws do not protect or remove
    const Belief next =
        reinvigorate_two_step(b, recs, Observation{false}, {}, {}, {1, 2}, 0.0, rng);
    CHECK(next.histogram() == std::map<int, int>{{1, 5}, {2, 3}});
}

TEST_CASE("two-step: new-candidate arithmetic") {
    const Belief b = make({{1, 6}, {2, 4}});
    Rng rng(11);
    const Belief next = reinvigorate_two_step(b, {}, Observation{false}, {}, {3}, {1, 2, 3}, 0.5,
                                              rng);
    CHECK(next.size() == 15); // 10 survivors + ceil(0.5 * 10)
    const auto h = next.histogram();
    CHECK(h.at(1) == 6);
    CHECK(h.at(2) == 4);
    CHECK(h.at(3) == 5);
}

TEST_CASE("two-step: removed candidate cells are pruned") {
    const Belief b = make({{1, 4}, {2, 4}});
    Rng rng(3);
    const Belief next =
        reinvigorate_two_step(b, {}, Observation{false}, {2}, {}, {1}, 0.2, rng);
    CHECK(next.histogram() == std::map<int, int>{{1, 4}});
}

TEST_CASE("two-step: deprivation fallback re-initializes uniformly") {
    const Belief b = make({{1, 10}});
    Rng rng(13);
    const Belief next = reinvigorate_two_step(b, records_of(1, true, 10), Observation{false}, {},
                                              {}, {5, 6}, 0.2, rng);
    CHECK(next.size() == 10);
    const auto h = next.histogram();
    CHECK(h.at(5) == 5);
    CHECK(h.at(6) == 5);
}

TEST_CASE("two-step: identity without contradictions, removals or news") {
    const Belief b = make({{1, 3}, {4, 2}, {9, 5}});
    Rng rng(17);
    const Belief next = reinvigorate_two_step(b, records_of(1, false, 30), Observation{false},
                                              {}, {}, {1, 4, 9}, 0.0, rng);
    CHECK(next == b);
}

TEST_CASE("two-step: rejects bad fraction, empty fallback set throws") {
    const Belief b = make({{1, 1}});
    Rng rng(1);
    CHECK_THROWS_AS(
        reinvigorate_two_step(b, {}, Observation{false}, {}, {}, {1}, 1.5, rng),
        std::invalid_argument);
    CHECK_THROWS_AS(reinvigorate_two_step(b, records_of(1, true, 5), Observation{false}, {}, {},
                                          {}, 0.2, rng),
                    std::invalid_argument);
}

TEST_CASE("original: survivors absorb the whole mass") {
    const Belief b = make({{1, 5}, {2, 5}});
    Rng rng(23);
    const Belief next = reinvigorate_original(b, records_of(1, false, 4), Observation{false},
                                              {1, 2}, rng);
    CHECK(next.histogram() == std::map<int, int>{{1, 10}});
}

TEST_CASE("original: no matching simulation falls back to uniform") {
    const Belief b = make({{1, 4}, {2, 4}});
    Rng rng(29);
    const Belief next =
        reinvigorate_original(b, records_of(1, true, 9), Observation{false}, {7, 8}, rng);
    CHECK(next.size() == 8);
    const auto h = next.histogram();
    CHECK(h.at(7) == 4);
    CHECK(h.at(8) == 4);
}

TEST_CASE("original: everything matched keeps the belief fixed") {
    const Belief b = make({{1, 4}, {2, 6}});
    Rng rng(31);
    std::vector<SimRecord> recs = records_of(1, false, 3);
    for (auto r : records_of(2, false, 3)) recs.push_back(r);
    const Belief next = reinvigorate_original(b, recs, Observation{false}, {1, 2}, rng);
    CHECK(next == b);
}

TEST_CASE("prune_to_candidates") {
    const Belief b = make({{1, 3}, {2, 3}, {3, 2}});
    Rng rng(37);
    CHECK(prune_to_candidates(b, {1, 2, 3}, rng) == b);
    CHECK(prune_to_candidates(b, {1, 3}, rng).histogram() ==
          std::map<int, int>{{1, 3}, {3, 2}});
    const Belief fb = prune_to_candidates(b, {9, 10}, rng);
    CHECK(fb.size() == b.size());
    CHECK(fb.histogram().count(9) == 1);
}

TEST_CASE("resample_to preserves proportions") {
    const Belief b = make({{1, 30}, {2, 20}, {3, 10}});
    const Belief half = resample_to(b, 30);
    CHECK(half.histogram() == std::map<int, int>{{1, 15}, {2, 10}, {3, 5}});
    const Belief grown = resample_to(b, 120);
    CHECK(grown.histogram() == std::map<int, int>{{1, 60}, {2, 40}, {3, 20}});
    CHECK(resample_to(b, 7).size() == 7);
    CHECK_THROWS_AS(resample_to(Belief(), 5), std::logic_error);
}

TEST_CASE("reinvigoration invariants over random calls") {
    Rng rng(20240202);
    for (int trial = 0; trial < 300; ++trial) {
        // random candidate universe and belief over a subset
        const int n_cand = 2 + rng.uniform_int(8);
        std::vector<int> cands;
        for (int i = 0; i < n_cand; ++i) cands.push_back(rng.uniform_int(50));
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        std::vector<int> particles;
        const int count = 1 + rng.uniform_int(40);
        for (int i = 0; i < count; ++i)
            particles.push_back(cands[rng.uniform_int((int)cands.size())]);
        Belief b{particles};

        std::vector<SimRecord> recs;
        const int n_recs = rng.uniform_int(60);
        for (int i = 0; i < n_recs; ++i)
            recs.push_back({cands[rng.uniform_int((int)cands.size())], rng.bernoulli(0.3)});
        const Observation obs{rng.bernoulli(0.5)};

        // split candidates into removed / kept / new
        std::vector<int> removed, kept, fresh;
        for (int c : cands) (rng.bernoulli(0.25) ? removed : kept).push_back(c);
        if (kept.empty()) kept.push_back(cands[0]);
        for (int i = 0; i < 3; ++i)
            if (rng.bernoulli(0.4)) fresh.push_back(100 + i);
        std::vector<int> current = kept;
        for (int c : fresh) current.push_back(c);

        const double f = rng.uniform_double();
        const Belief two = reinvigorate_two_step(b, recs, obs, removed, fresh, current, f, rng);
        CHECK(two.size() >= 1);
        for (const auto& [cell, n] : two.histogram())
            CHECK(std::count(current.begin(), current.end(), cell) == 1);

        const Belief orig = reinvigorate_original(b, recs, obs, current, rng);
        CHECK(orig.size() >= 1);
    }
}

TEST_CASE("determinism: identical inputs and seed give identical beliefs") {
    const Belief b = make({{1, 6}, {2, 4}, {5, 2}});
    const auto recs = records_of(2, true, 3);
    Rng r1(771), r2(771);
    const Belief a =
        reinvigorate_two_step(b, recs, Observation{false}, {5}, {8, 9}, {1, 8, 9}, 0.3, r1);
    const Belief c =
        reinvigorate_two_step(b, recs, Observation{false}, {5}, {8, 9}, {1, 8, 9}, 0.3, r2);
    CHECK(a == c);
}

} // TEST_SUITE
