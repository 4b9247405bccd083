#include "srr/storage_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace srr {

StorageSystem::StorageSystem(int K_, std::vector<NodeKind> nodes_, Rat mu_)
    : K(K_), nodes(std::move(nodes_)), mu(std::move(mu_)) {
    if (K < 1) throw std::invalid_argument("storage system needs K >= 1 files");
    if (mu <= 0) throw std::invalid_argument("service rate mu must be positive");
    for (const NodeKind& n : nodes) {
        if (n.systematic_file && (*n.systematic_file < 0 || *n.systematic_file >= K))
            throw std::invalid_argument("systematic node references unknown file");
    }
}

int StorageSystem::coded_count() const {
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(),
                      [](const NodeKind& n) { return n.is_coded(); }));
}

int StorageSystem::systematic_count(FileIndex file) const {
    return static_cast<int>(
        std::count_if(nodes.begin(), nodes.end(), [&](const NodeKind& n) {
            return n.is_systematic_for(file);
        }));
}

std::vector<NodeId> StorageSystem::coded_nodes() const {
    std::vector<NodeId> out;
    for (NodeId j = 0; j < node_count(); ++j)
        if (nodes[j].is_coded()) out.push_back(j);
    return out;
}

std::vector<NodeId> StorageSystem::systematic_nodes(FileIndex file) const {
    std::vector<NodeId> out;
    for (NodeId j = 0; j < node_count(); ++j)
        if (nodes[j].is_systematic_for(file)) out.push_back(j);
    return out;
}

std::vector<int> StorageSystem::systematic_counts() const {
    std::vector<int> counts(K, 0);
    for (const NodeKind& n : nodes)
        if (n.systematic_file) ++counts[*n.systematic_file];
    return counts;
}

StorageSystem build_mds_core_system(const std::vector<int>& N_counts, int C,
                                    const Rat& mu) {
    if (N_counts.empty()) throw std::invalid_argument("invalid system: K = 0");
    if (C < 0) throw std::invalid_argument("invalid parameter: C < 0");
    std::vector<NodeKind> nodes;
    for (int k = 0; k < static_cast<int>(N_counts.size()); ++k) {
        if (N_counts[k] < 0)
            throw std::invalid_argument("invalid parameter: negative node count");
        for (int i = 0; i < N_counts[k]; ++i) nodes.push_back(NodeKind::systematic(k));
    }
    for (int i = 0; i < C; ++i) nodes.push_back(NodeKind::coded());
    return StorageSystem(static_cast<int>(N_counts.size()), std::move(nodes), mu);
}

bool RepairGroup::contains(NodeId node) const {
    return std::binary_search(members.begin(), members.end(), node);
}

namespace {

// Calls fn with each k-subset of items, in lexicographic order.
template <typename Fn>
void for_each_subset(const std::vector<NodeId>& items, int k, Fn&& fn) {
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<NodeId> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = items[idx[i]];
        fn(subset);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

RepairGroupTable enumerate_repair_groups(const StorageSystem& system) {
    const int K = system.K;
    const std::vector<NodeId> coded = system.coded_nodes();
    const int C = static_cast<int>(coded.size());

    std::vector<std::vector<NodeId>> sys_nodes(K);
    for (int k = 0; k < K; ++k) sys_nodes[k] = system.systematic_nodes(k);

    RepairGroupTable table;
    table.groups.resize(K);

    for (FileIndex k = 0; k < K; ++k) {
        auto& out = table.groups[k];
        for (NodeId j : sys_nodes[k]) out.push_back({k, {j}});

        // Files other than k that can contribute a systematic node.
        std::vector<FileIndex> donors;
        for (FileIndex f = 0; f < K; ++f)
            if (f != k && !sys_nodes[f].empty()) donors.push_back(f);

        const int max_n = std::min(K - 1, static_cast<int>(donors.size()));
        for (int n = 0; n <= max_n; ++n) {
            if (C < K - n) continue;
            std::vector<RepairGroup> batch;
            std::vector<FileIndex> file_pick;
            // every n-subset of donor files, one systematic node per file
            auto recurse = [&](auto&& self, int start) -> void {
                if (static_cast<int>(file_pick.size()) == n) {
                    std::vector<NodeId> sys_members;
                    auto choose_nodes = [&](auto&& self2, size_t depth) -> void {
                        if (depth == file_pick.size()) {
                            for_each_subset(coded, K - n, [&](const std::vector<NodeId>& cs) {
                                RepairGroup g{k, sys_members};
                                g.members.insert(g.members.end(), cs.begin(), cs.end());
                                std::sort(g.members.begin(), g.members.end());
                                batch.push_back(std::move(g));
                            });
                            return;
                        }
                        for (NodeId j : sys_nodes[file_pick[depth]]) {
                            sys_members.push_back(j);
                            self2(self2, depth + 1);
                            sys_members.pop_back();
                        }
                    };
                    choose_nodes(choose_nodes, 0);
                    return;
                }
                for (int d = start; d < static_cast<int>(donors.size()); ++d) {
                    file_pick.push_back(donors[d]);
                    self(self, d + 1);
                    file_pick.pop_back();
                }
            };
            recurse(recurse, 0);
            std::sort(batch.begin(), batch.end(),
                      [](const RepairGroup& a, const RepairGroup& b) {
                          return a.members < b.members;
                      });
            for (auto& g : batch) out.push_back(std::move(g));
        }
    }
    return table;
}

int delta(const RepairGroupTable& table, FileIndex k, int i, NodeId j) {
    if (k < 0 || k >= table.file_count()) throw std::out_of_range("file index");
    const auto& file_groups = table.groups[k];
    if (i < 0 || i >= static_cast<int>(file_groups.size()))
        throw std::out_of_range("group index");
    if (j < 0) throw std::out_of_range("node id");
    return file_groups[i].contains(j) ? 1 : 0;
}

}  // namespace srr
