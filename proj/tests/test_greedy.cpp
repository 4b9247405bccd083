#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "srr/greedy.hpp"
#include "srr/closed_form.hpp"
#include "srr/lp_oracle.hpp"
#include "support/common.hpp"

using namespace srr;
using test::rats;

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Rat replay_max_load(const StorageSystem& sys, const GreedyTrace& trace) {
    RepairGroupTable table = enumerate_repair_groups(sys);
    auto [demand, strategy] = trace_to_strategy(table, trace);
    NodeLoadVector loads = node_loads(table, strategy, demand, sys.node_count());
    Rat max_load = 0;
    for (const Rat& l : loads.load) max_load = std::max(max_load, l);
    return max_load;
}

}  // namespace

TEST_CASE("step 1 absorbs demand into systematic nodes") {
    StorageSystem sys = build_mds_core_system({3, 1, 1}, 3, 1);
    GreedyState s = step1_absorb(sys, rats({"3/2", "2"}));
    CHECK(s.residual == rats({"0", "1"}));
    CHECK(s.n_avail == std::vector<int>{2, 0, 1});
    CHECK(s.mu_sys[0] == frac(3, 4));
    CHECK(s.mu_sys[1] == 0);
    CHECK(s.mu_sys[2] == 1);
    CHECK(s.k_prime == 1);
    CHECK(s.mu_coded == 1);
    CHECK(s.coded_avail == 3);
}

TEST_CASE("step 1 with zero demand leaves capacities intact") {
    StorageSystem sys = build_mds_core_system({2, 1, 1}, 2, 1);
    GreedyState s = step1_absorb(sys, rats({"0", "0"}));
    CHECK(s.residual == rats({"0", "0"}));
    CHECK(s.n_avail == std::vector<int>{2, 1, 1});
    CHECK(s.mu_sys == rats({"1", "1", "1"}));
    CHECK(s.k_prime == 2);
}

TEST_CASE("step 1 overflow leaves residual demand") {
    StorageSystem sys = build_mds_core_system({2, 0, 0}, 1, 1);
    GreedyState s = step1_absorb(sys, rats({"3", "1"}));
    CHECK(s.residual == rats({"1", "1"}));
    CHECK(s.n_avail == std::vector<int>{0, 0, 0});
    CHECK(s.k_prime == 0);
}

TEST_CASE("step 1 conservation: served plus residual equals demand") {
    std::mt19937_64 rng(41);
    StorageSystem sys = build_mds_core_system({3, 2, 1}, 2, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rat> demand = {test::random_rat(rng, 4),
                                   test::random_rat(rng, 3)};
        GreedyTrace trace;
        GreedyState s = step1_absorb(sys, demand, &trace);
        std::vector<Rat> served(2, Rat(0));
        for (const TraceRecord& r : trace.records) served[r.file] += r.total_rate;
        for (int i = 0; i < 2; ++i) CHECK(served[i] + s.residual[i] == demand[i]);
    }
}

TEST_CASE("worked three-file example water-fills to 3/2") {
    StorageSystem sys = build_mds_core_system({3, 1, 1}, 3, 1);
    GreedyTrace trace;
    GreedyState s = step1_absorb(sys, rats({"3/2", "2"}), &trace);
    s = step2_waterfill(sys, std::move(s), &trace);
    CHECK(s.lambda_k_acc == frac(3, 2));
    CHECK(sum(s.residual) == 0);

    // the mixed phase contributes 1/2 to the target, the tail contributes 1
    Rat mixed = 0, tail = 0;
    for (const TraceRecord& r : trace.records) {
        if (r.phase == TracePhase::mixed_fill && r.file == 2) mixed += r.total_rate;
        if (r.phase == TracePhase::systematic_tail) tail += r.total_rate;
    }
    CHECK(mixed == frac(1, 2));
    CHECK(tail == 1);
    CHECK(replay_max_load(sys, trace) <= 1);
}

TEST_CASE("coded-only tail plus the target's systematic nodes") {
    StorageSystem sys = build_mds_core_system({0, 0, 1}, 3, 1);
    GreedyResult r = maximize_lambda_K_greedy(sys, rats({"0", "0"}));
    REQUIRE(r.ok());
    CHECK(r.lambda_K == 2);  // C/3 * mu + N_3 * mu
}

TEST_CASE("greedy reproduces known boundary values") {
    SUBCASE("worked example") {
        StorageSystem sys = build_mds_core_system({3, 1, 1}, 3, 1);
        GreedyResult r = maximize_lambda_K_greedy(sys, rats({"3/2", "2"}));
        REQUIRE(r.ok());
        CHECK(r.lambda_K == frac(3, 2));
    }
    SUBCASE("all-coded") {
        StorageSystem sys = build_mds_core_system({0, 0, 0}, 3, 1);
        GreedyResult r = maximize_lambda_K_greedy(sys, rats({"3/10", "3/10"}));
        REQUIRE(r.ok());
        CHECK(r.lambda_K == frac(2, 5));
    }
    SUBCASE("one systematic node per file") {
        StorageSystem sys = build_mds_core_system({1, 1, 1}, 3, 1);
        GreedyResult r = maximize_lambda_K_greedy(sys, rats({"1/2", "1/2"}));
        REQUIRE(r.ok());
        CHECK(r.lambda_K == frac(7, 3));
        RepairGroupTable table = enumerate_repair_groups(sys);
        MaximizeResult lp =
            maximize_last(sys, table, rats({"1/2", "1/2"}), LpMode::rational());
        REQUIRE(lp.ok());
        CHECK(lp.L == r.lambda_K);
    }
}

TEST_CASE("four-file instance stays at or below the LP optimum") {
    StorageSystem sys = build_mds_core_system({1, 1, 1, 0}, 4, 1);
    std::vector<Rat> hat = rats({"1/2", "1/2", "1/2"});
    GreedyResult greedy = maximize_lambda_K_greedy(sys, hat);
    RepairGroupTable table = enumerate_repair_groups(sys);
    MaximizeResult lp = maximize_last(sys, table, hat, LpMode::rational());
    REQUIRE(lp.ok());
    REQUIRE(greedy.ok());
    CHECK(greedy.lambda_K <= lp.L);
    CHECK(replay_max_load(sys, greedy.trace) <= 1);
}

TEST_CASE("precondition violations are reported, not computed") {
    StorageSystem sys = build_mds_core_system({1, 1, 1}, 3, 1);
    GreedyResult r = maximize_lambda_K_greedy(sys, rats({"3", "1"}));
    CHECK(r.status == GreedyResult::Status::unsupported_parameters);
}

TEST_CASE("unserveable residual demand is flagged") {
    StorageSystem sys = build_mds_core_system({3, 0, 0}, 3, 1);
    GreedyResult r = maximize_lambda_K_greedy(sys, rats({"0", "4"}));
    CHECK(r.status == GreedyResult::Status::residual_unserved);
    CHECK(sum(r.final_state.residual) > 0);
}

TEST_CASE("rate updates match the unsimplified product/binomial expressions") {
    StorageSystem sys = build_mds_core_system({2, 3, 0}, 4, 1);
    GreedyState s0 = step1_absorb(sys, rats({"1/2", "0"}));
    REQUIRE(s0.k_prime == 2);
    const Rat mu_m = s0.mu_sys[0];  // argmin product: 2 * 3/4 < 3
    const int N_m = s0.n_avail[0], N_j = s0.n_avail[1];
    const int K = 3, K_prime = 2, C = 4;

    std::vector<GreedyState> snaps;
    step2_waterfill(sys, s0, nullptr,
                    [&](const GreedyState& s) { snaps.push_back(s); });
    REQUIRE(snaps.size() >= 2);

    // full systematic update: mu_j - mu_m * (prod_{i != j} N_i) * binom(C, K-K')
    //                                / ((prod_{i != m} N_i) * binom(C, K-K'))
    Rat full_sys = s0.mu_sys[1] -
                   mu_m * Rat(N_m) * binom(C, K - K_prime) /
                       (Rat(N_j) * binom(C, K - K_prime));
    CHECK(snaps[0].mu_sys[1] == full_sys);
    CHECK(snaps[0].mu_sys[1] == s0.mu_sys[1] - mu_m * N_m / N_j);

    // full coded update: mu_C - mu_m * (prod N_i) * binom(C-1, K-K'-1)
    //                           / ((prod_{i != m} N_i) * binom(C, K-K'))
    Rat full_coded = s0.mu_coded -
                     mu_m * Rat(N_m) * Rat(N_j) * binom(C - 1, K - K_prime - 1) /
                         (Rat(N_j) * binom(C, K - K_prime));
    CHECK(snaps[0].mu_coded == full_coded);
    CHECK(snaps[0].mu_coded ==
          s0.mu_coded - mu_m * N_m * (K - K_prime) / C);
}

TEST_CASE("state is monotone across step-2 iterations") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> nd(0, 3), cd(0, 5);
        std::vector<int> counts = {nd(rng), nd(rng), nd(rng)};
        StorageSystem sys = build_mds_core_system(counts, cd(rng), 1);
        std::vector<Rat> demand = {test::random_rat(rng, 2),
                                   test::random_rat(rng, 2)};
        GreedyState prev = step1_absorb(sys, demand);
        GreedyState first = prev;
        bool ok = true;
        step2_waterfill(sys, first, nullptr, [&](const GreedyState& s) {
            ok = ok && s.mu_coded <= prev.mu_coded &&
                 s.coded_avail <= prev.coded_avail && s.k_prime <= prev.k_prime;
            for (int i = 0; i < 3; ++i) {
                ok = ok && s.mu_sys[i] <= prev.mu_sys[i] && s.mu_sys[i] >= 0;
            }
            ok = ok && s.mu_coded >= 0;
            prev = s;
        });
        CHECK(ok);
    }
}

TEST_CASE("tied products drain identically under file permutation") {
    StorageSystem a = build_mds_core_system({2, 2, 0}, 3, 1);
    StorageSystem b = build_mds_core_system({2, 2, 0}, 3, 1);
    GreedyResult ra = maximize_lambda_K_greedy(a, rats({"1/4", "1/4"}));
    GreedyResult rb = maximize_lambda_K_greedy(b, rats({"1/4", "1/4"}));
    REQUIRE(ra.ok());
    REQUIRE(rb.ok());
    CHECK(ra.lambda_K == rb.lambda_K);

    // asymmetric demand, symmetric layout: swapping the files swaps nothing
    GreedyResult rc = maximize_lambda_K_greedy(a, rats({"1/4", "1/2"}));
    GreedyResult rd = maximize_lambda_K_greedy(a, rats({"1/2", "1/4"}));
    REQUIRE(rc.ok());
    REQUIRE(rd.ok());
    CHECK(rc.lambda_K == rd.lambda_K);
}

TEST_CASE("greedy is safe and exact-when-serving against the LP oracle") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> nd(0, 3), cd(0, 6), kd(3, 5);
    int tested = 0;
    while (tested < 60) {
        const int K = kd(rng);
        std::vector<int> counts(K);
        for (int& n : counts) n = nd(rng);
        const int C = cd(rng);
        StorageSystem sys = build_mds_core_system(counts, C, 1);

        Rat bound = frac(C, K);
        for (int i = 0; i < K - 1; ++i) bound += counts[i];
        std::vector<Rat> hat(K - 1);
        Rat left = bound;
        for (int i = 0; i < K - 1; ++i) {
            hat[i] = test::random_rat(rng, std::min(left, Rat(2)), 4);
            left -= hat[i];
        }

        GreedyResult greedy = maximize_lambda_K_greedy(sys, hat);
        REQUIRE(greedy.status != GreedyResult::Status::unsupported_parameters);
        RepairGroupTable table = enumerate_repair_groups(sys);
        MaximizeResult lp = maximize_last(sys, table, hat, LpMode::rational());
        if (greedy.ok()) {
            REQUIRE(lp.ok());
            CHECK(greedy.lambda_K <= lp.L);
            if (K == 3 &&
                three_file_preconditions(counts[0], counts[1], C, 1, hat[0], hat[1]))
                CHECK(greedy.lambda_K == lp.L);
            CHECK(replay_max_load(sys, greedy.trace) <= 1);
        }
        ++tested;
    }
}

TEST_CASE("trace exports one JSON line per record") {
    StorageSystem sys = build_mds_core_system({3, 1, 1}, 3, 1);
    GreedyResult r = maximize_lambda_K_greedy(sys, rats({"3/2", "2"}));
    REQUIRE(r.ok());
    std::ostringstream os;
    write_trace_jsonl(r.trace, os);
    std::string text = os.str();
    long lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == static_cast<long>(r.trace.records.size()));
    CHECK(text.find("\"phase\":\"mixed_fill\"") != std::string::npos);
    CHECK(text.find("\"rate_per_group\"") != std::string::npos);
}
