#include "srr/greedy.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace srr {

namespace {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long result = 1;
    for (int i = 0; i < k; ++i) result = result * (n - i) / (i + 1);
    return result;
}

// Step 1 exhausts a prefix of each file's systematic nodes, so the usable
// remainder is always a suffix.
std::vector<NodeId> available_suffix(const StorageSystem& system, FileIndex file,
                                     int avail) {
    std::vector<NodeId> nodes = system.systematic_nodes(file);
    if (avail > static_cast<int>(nodes.size()))
        throw std::invalid_argument("state inconsistent with system");
    return {nodes.end() - avail, nodes.end()};
}

void push_record(GreedyTrace* trace, TraceRecord record) {
    if (trace && record.total_rate > 0) trace->records.push_back(std::move(record));
}

}  // namespace

long TraceRecord::group_count() const {
    long count = binomial(static_cast<int>(coded_pool.size()), coded_take);
    for (const auto& choices : sys_choices)
        count *= static_cast<long>(choices.size());
    return count;
}

Rat TraceRecord::rate_per_group() const {
    const long groups = group_count();
    if (groups == 0) throw std::invalid_argument("trace record with no groups");
    return total_rate / groups;
}

GreedyState step1_absorb(const StorageSystem& system,
                         const std::vector<Rat>& demand, GreedyTrace* trace) {
    const int K = system.K;
    if (static_cast<int>(demand.size()) != K - 1)
        throw std::invalid_argument("demand must have K-1 entries");
    for (const Rat& l : demand)
        if (l < 0) throw std::invalid_argument("demand must be nonnegative");

    const std::vector<int> counts = system.systematic_counts();
    const Rat& mu = system.mu;

    GreedyState state;
    state.residual.assign(K - 1, Rat(0));
    state.n_avail = counts;
    state.mu_sys.assign(K, mu);
    state.mu_coded = mu;
    state.coded_avail = system.coded_count();
    state.lambda_k_acc = 0;

    for (int i = 0; i < K - 1; ++i) {
        const Rat cap = Rat(counts[i]) * mu;
        const std::vector<NodeId> nodes = system.systematic_nodes(i);
        if (demand[i] <= cap) {
            const Rat full = rat_floor(demand[i] / mu);
            const int full_nodes = static_cast<int>(full.get_num().get_si());
            const Rat frac = demand[i] - full * mu;
            state.n_avail[i] = counts[i] - full_nodes;
            if (full_nodes > 0)
                push_record(trace,
                            {TracePhase::systematic_direct,
                             i,
                             {i},
                             {{nodes.begin(), nodes.begin() + full_nodes}},
                             {},
                             0,
                             full * mu});
            if (state.n_avail[i] > 0) {
                state.mu_sys[i] = mu - frac / state.n_avail[i];
                push_record(trace,
                            {TracePhase::systematic_direct,
                             i,
                             {i},
                             {{nodes.begin() + full_nodes, nodes.end()}},
                             {},
                             0,
                             frac});
            } else {
                state.mu_sys[i] = 0;
            }
        } else {
            state.residual[i] = demand[i] - cap;
            state.n_avail[i] = 0;
            state.mu_sys[i] = 0;
            push_record(trace, {TracePhase::systematic_direct,
                                i,
                                {i},
                                {nodes},
                                {},
                                0,
                                cap});
        }
    }
    state.k_prime = 0;
    for (int i = 0; i < K - 1; ++i)
        if (state.n_avail[i] > 0) ++state.k_prime;
    return state;
}

namespace {

// Spreads `amount` of demand uniformly over the current mixed/coded shape,
// residual files first (ascending index), any overflow credited to the
// target file. Returns the amount credited to the target.
Rat serve_through_shape(GreedyState& state, const Rat& amount,
                        const TraceRecord& shape_template, GreedyTrace* trace) {
    Rat rem = amount;
    for (int i = 0; i < static_cast<int>(state.residual.size()) && rem > 0; ++i) {
        if (state.residual[i] == 0) continue;
        const Rat take = std::min(state.residual[i], rem);
        state.residual[i] -= take;
        rem -= take;
        TraceRecord rec = shape_template;
        rec.file = i;
        rec.total_rate = take;
        push_record(trace, std::move(rec));
    }
    if (rem > 0) {
        TraceRecord rec = shape_template;
        rec.total_rate = rem;
        push_record(trace, std::move(rec));
    }
    return rem;
}

}  // namespace

GreedyState step2_waterfill(const StorageSystem& system, GreedyState state,
                            GreedyTrace* trace,
                            const std::function<void(const GreedyState&)>& observer) {
    const int K = system.K;
    const int target = K - 1;
    const std::vector<NodeId> coded = system.coded_nodes();

    while (state.coded_avail > 0 && state.coded_avail >= K - state.k_prime) {
        if (state.k_prime > 0) {
            int m = -1;
            for (int i = 0; i < K - 1; ++i) {
                if (state.n_avail[i] <= 0) continue;
                if (m < 0 || Rat(state.n_avail[i]) * state.mu_sys[i] <
                                 Rat(state.n_avail[m]) * state.mu_sys[m])
                    m = i;
            }
            const int coded_take = K - state.k_prime;
            const Rat sys_capacity = Rat(state.n_avail[m]) * state.mu_sys[m];
            const Rat coded_capacity =
                state.mu_coded * state.coded_avail / coded_take;
            const Rat l = std::min(sys_capacity, coded_capacity);

            TraceRecord shape;
            shape.phase = TracePhase::mixed_fill;
            shape.file = target;
            for (int j = 0; j < K - 1; ++j) {
                if (state.n_avail[j] <= 0) continue;
                shape.sys_files.push_back(j);
                shape.sys_choices.push_back(
                    available_suffix(system, j, state.n_avail[j]));
            }
            shape.coded_pool = coded;
            shape.coded_take = coded_take;

            state.lambda_k_acc += serve_through_shape(state, l, shape, trace);

            for (int j = 0; j < K - 1; ++j)
                if (state.n_avail[j] > 0) state.mu_sys[j] -= l / state.n_avail[j];
            state.mu_coded -= l * coded_take / state.coded_avail;

            if (l == sys_capacity) {
                state.n_avail[m] = 0;
                state.mu_sys[m] = 0;
                --state.k_prime;
                // ties drain other files in the same pass
                for (int j = 0; j < K - 1; ++j) {
                    if (state.n_avail[j] > 0 && state.mu_sys[j] == 0) {
                        state.n_avail[j] = 0;
                        --state.k_prime;
                    }
                }
            } else {
                state.mu_coded = 0;
                state.coded_avail = 0;
            }
        } else {
            // coded-only groups, as in the all-coded region
            TraceRecord shape;
            shape.phase = TracePhase::all_coded;
            shape.file = target;
            shape.coded_pool = coded;
            shape.coded_take = K;

            const Rat capacity = state.mu_coded * state.coded_avail / K;
            const Rat pending = sum(state.residual);
            const Rat served = std::min(pending, capacity);
            serve_through_shape(state, served, shape, trace);  // residuals only
            state.mu_coded -= served * K / state.coded_avail;

            const Rat target_gain = Rat(state.coded_avail) * state.mu_coded / K;
            if (target_gain > 0) {
                TraceRecord rec = shape;
                rec.total_rate = target_gain;
                push_record(trace, std::move(rec));
            }
            state.lambda_k_acc += target_gain;
            state.mu_coded = 0;
            state.coded_avail = 0;
        }
        if (observer) observer(state);
    }

    if (state.n_avail[target] > 0) {
        const Rat tail = state.mu_sys[target] * state.n_avail[target];
        push_record(trace, {TracePhase::systematic_tail,
                            target,
                            {target},
                            {system.systematic_nodes(target)},
                            {},
                            0,
                            tail});
        state.lambda_k_acc += tail;
    }
    if (observer) observer(state);
    return state;
}

GreedyResult maximize_lambda_K_greedy(const StorageSystem& system,
                                      const std::vector<Rat>& demand) {
    GreedyResult result;
    const std::vector<int> counts = system.systematic_counts();
    Rat bound = Rat(system.coded_count()) * system.mu / system.K;
    for (int i = 0; i < system.K - 1; ++i) bound += Rat(counts[i]) * system.mu;
    if (sum(demand) > bound) {
        result.status = GreedyResult::Status::unsupported_parameters;
        return result;
    }

    GreedyState state = step1_absorb(system, demand, &result.trace);
    state = step2_waterfill(system, std::move(state), &result.trace);
    result.lambda_K = state.lambda_k_acc;
    result.status = sum(state.residual) > 0
                        ? GreedyResult::Status::residual_unserved
                        : GreedyResult::Status::ok;
    result.final_state = std::move(state);
    return result;
}

std::vector<std::vector<Rat>> trace_rates(const RepairGroupTable& table,
                                          const GreedyTrace& trace) {
    std::vector<std::map<std::vector<NodeId>, int>> index(table.file_count());
    for (int k = 0; k < table.file_count(); ++k)
        for (int i = 0; i < table.gamma(k); ++i)
            index[k][table.groups[k][i].members] = i;

    std::vector<std::vector<Rat>> rates(table.file_count());
    for (int k = 0; k < table.file_count(); ++k)
        rates[k].assign(table.gamma(k), Rat(0));

    for (const TraceRecord& rec : trace.records) {
        if (rec.file < 0 || rec.file >= table.file_count())
            throw std::invalid_argument("trace references unknown file");
        const Rat per_group = rec.rate_per_group();
        auto& file_index = index[rec.file];
        auto& file_rates = rates[rec.file];

        std::vector<NodeId> sys_members(rec.sys_choices.size());
        auto emit = [&](const std::vector<NodeId>& coded_members) {
            std::vector<NodeId> members = sys_members;
            members.insert(members.end(), coded_members.begin(),
                           coded_members.end());
            std::sort(members.begin(), members.end());
            auto it = file_index.find(members);
            if (it == file_index.end())
                throw std::invalid_argument("traced group missing from table");
            file_rates[it->second] += per_group;
        };
        auto pick_coded = [&] {
            const int n = static_cast<int>(rec.coded_pool.size());
            const int k = rec.coded_take;
            if (k == 0) {
                emit({});
                return;
            }
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            std::vector<NodeId> subset(k);
            while (true) {
                for (int i = 0; i < k; ++i) subset[i] = rec.coded_pool[idx[i]];
                emit(subset);
                int i = k - 1;
                while (i >= 0 && idx[i] == n - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        };
        auto pick_sys = [&](auto&& self, size_t depth) -> void {
            if (depth == rec.sys_choices.size()) {
                pick_coded();
                return;
            }
            for (NodeId node : rec.sys_choices[depth]) {
                sys_members[depth] = node;
                self(self, depth + 1);
            }
        };
        pick_sys(pick_sys, 0);
    }
    return rates;
}

std::pair<DemandVector, SplittingStrategy> trace_to_strategy(
    const RepairGroupTable& table, const GreedyTrace& trace) {
    std::vector<std::vector<Rat>> rates = trace_rates(table, trace);
    DemandVector demand;
    demand.lambda.assign(table.file_count(), Rat(0));
    SplittingStrategy strategy = SplittingStrategy::zeros(table);
    for (int k = 0; k < table.file_count(); ++k) {
        for (const Rat& r : rates[k]) demand.lambda[k] += r;
        if (demand.lambda[k] > 0)
            for (int i = 0; i < table.gamma(k); ++i)
                strategy.alpha[k][i] = rates[k][i] / demand.lambda[k];
    }
    return {std::move(demand), std::move(strategy)};
}

namespace {

const char* phase_name(TracePhase p) {
    switch (p) {
        case TracePhase::systematic_direct: return "systematic_direct";
        case TracePhase::mixed_fill: return "mixed_fill";
        case TracePhase::all_coded: return "all_coded";
        case TracePhase::systematic_tail: return "systematic_tail";
    }
    return "?";
}

}  // namespace

void write_trace_jsonl(const GreedyTrace& trace, std::ostream& os) {
    for (const TraceRecord& rec : trace.records) {
        os << "{\"phase\":\"" << phase_name(rec.phase) << "\",\"file\":"
           << rec.file + 1 << ",\"shape\":{\"systematic_files\":[";
        for (size_t i = 0; i < rec.sys_files.size(); ++i) {
            if (i) os << ',';
            os << rec.sys_files[i] + 1;
        }
        os << "],\"coded_per_group\":" << rec.coded_take
           << "},\"groups\":" << rec.group_count() << ",\"rate_per_group\":\""
           << to_string(rec.rate_per_group()) << "\"}\n";
    }
}

}  // namespace srr
