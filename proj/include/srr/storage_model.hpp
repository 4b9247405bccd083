#pragma once

#include <optional>
#include <vector>

#include "srr/rational.hpp"

namespace srr {

using NodeId = int;     // dense 0..N-1 internally; printed 1-based
using FileIndex = int;  // 0..K-1

// A node either holds a plain copy of one file (systematic) or a coded
// combination that is only useful inside a repair group.
struct NodeKind {
    std::optional<FileIndex> systematic_file;

    static NodeKind systematic(FileIndex file) { return NodeKind{file}; }
    static NodeKind coded() { return NodeKind{std::nullopt}; }
    bool is_coded() const { return !systematic_file.has_value(); }
    bool is_systematic_for(FileIndex file) const {
        return systematic_file && *systematic_file == file;
    }
};

// K files stored on N nodes with an MDS core and uniform service rate mu.
struct StorageSystem {
    int K = 0;
    std::vector<NodeKind> nodes;
    Rat mu = 1;

    StorageSystem() = default;
    // Throws std::invalid_argument on K < 1, mu <= 0, or a systematic node
    // referencing a file outside [0, K).
    StorageSystem(int K, std::vector<NodeKind> nodes, Rat mu);

    int node_count() const { return static_cast<int>(nodes.size()); }
    int coded_count() const;
    int systematic_count(FileIndex file) const;
    std::vector<NodeId> coded_nodes() const;
    std::vector<NodeId> systematic_nodes(FileIndex file) const;
    // [N_1, ..., N_K]
    std::vector<int> systematic_counts() const;
};

// Canonical layout: N_counts[0] systematic nodes for file 0 first, then
// file 1, ..., coded nodes last.
StorageSystem build_mds_core_system(const std::vector<int>& N_counts, int C,
                                    const Rat& mu);

// A minimal set of nodes that jointly serves one file.
struct RepairGroup {
    FileIndex file = 0;
    std::vector<NodeId> members;  // sorted ascending

    bool contains(NodeId node) const;
    bool operator==(const RepairGroup&) const = default;
};

struct RepairGroupTable {
    std::vector<std::vector<RepairGroup>> groups;  // indexed by file

    int file_count() const { return static_cast<int>(groups.size()); }
    int gamma(FileIndex file) const {
        return static_cast<int>(groups.at(file).size());
    }
};

// All minimal repair groups under the MDS-core access rules, per file:
// singletons over the file's systematic nodes first, then for ascending n
// every choice of n distinct other files contributing one systematic node
// each plus every (K-n)-subset of coded nodes (requires C >= K-n), ordered
// lexicographically by member set within each n.
RepairGroupTable enumerate_repair_groups(const StorageSystem& system);

// 1 iff node j is in group i of file k. Throws std::out_of_range on bad
// indices.
int delta(const RepairGroupTable& table, FileIndex k, int i, NodeId j);

}  // namespace srr
