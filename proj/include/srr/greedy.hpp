#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "srr/rational.hpp"
#include "srr/routing.hpp"
#include "srr/storage_model.hpp"

namespace srr {

// Aggregate per-class state carried through the two greedy steps. Index
// K-1 of n_avail / mu_sys belongs to the target file, which is never
// touched before the final systematic tail.
struct GreedyState {
    std::vector<Rat> residual;  // K-1 entries: demand left per fixed file
    std::vector<int> n_avail;   // K entries: systematic nodes still usable
    std::vector<Rat> mu_sys;    // K entries: rate left per systematic node
    Rat mu_coded;               // rate left per coded node
    int coded_avail = 0;
    int k_prime = 0;  // fixed files with n_avail > 0
    Rat lambda_k_acc;
};

enum class TracePhase { systematic_direct, mixed_fill, all_coded, systematic_tail };

// One uniform spread of demand over every repair group of a shape: pick one
// node from each sys_choices list plus coded_take nodes out of coded_pool.
struct TraceRecord {
    TracePhase phase = TracePhase::systematic_direct;
    FileIndex file = 0;  // file whose demand moves
    std::vector<FileIndex> sys_files;
    std::vector<std::vector<NodeId>> sys_choices;
    std::vector<NodeId> coded_pool;
    int coded_take = 0;
    Rat total_rate;

    long group_count() const;
    Rat rate_per_group() const;
};

struct GreedyTrace {
    std::vector<TraceRecord> records;
};

// Per-file per-group rates implied by a trace, aligned with the table's
// group ordering. Throws std::invalid_argument when a traced group does not
// exist in the table.
std::vector<std::vector<Rat>> trace_rates(const RepairGroupTable& table,
                                          const GreedyTrace& trace);

// Demand/strategy pair equivalent to the trace, for replay through
// node_loads.
std::pair<DemandVector, SplittingStrategy> trace_to_strategy(
    const RepairGroupTable& table, const GreedyTrace& trace);

// JSON-lines audit dump: one record per line with phase, shape, and
// per-group rate.
void write_trace_jsonl(const GreedyTrace& trace, std::ostream& os);

// Step 1: absorb demand into each fixed file's own systematic nodes; full
// nodes first, the remainder spread evenly over the rest.
GreedyState step1_absorb(const StorageSystem& system,
                         const std::vector<Rat>& demand,
                         GreedyTrace* trace = nullptr);

// Step 2: water-fill mixed repair groups in order of scarcest systematic
// capacity, finish with coded-only groups and the target file's own
// systematic nodes. Serves leftover residual demand before crediting the
// target file. The optional observer sees the state after every loop
// iteration.
GreedyState step2_waterfill(
    const StorageSystem& system, GreedyState state, GreedyTrace* trace = nullptr,
    const std::function<void(const GreedyState&)>& observer = nullptr);

struct GreedyResult {
    enum class Status { ok, unsupported_parameters, residual_unserved };
    Status status = Status::unsupported_parameters;
    Rat lambda_K;
    GreedyTrace trace;
    GreedyState final_state;

    bool ok() const { return status == Status::ok; }
};

// Both steps composed. Requires sum(demand) <= sum_i mu N_i + (C/K) mu over
// the fixed files; residual_unserved reports demand the water-fill could
// not place.
GreedyResult maximize_lambda_K_greedy(const StorageSystem& system,
                                      const std::vector<Rat>& demand);

}  // namespace srr
