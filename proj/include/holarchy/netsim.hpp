#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "holarchy/topology.hpp"

namespace holarchy {

enum class Phase { BottomUp, TopDown };

struct Message {
    int from = 0;
    int to = 0;
    Phase phase = Phase::BottomUp;
    int stage = 0;
    int payload_dim = 0;
};

// Counts exchanged messages per (iteration, stage, holon). The total cost
// sums every count; the synchronized cost counts holons of one stage only
// once, taking the stage's maximum holon count (holons of a stage are
// disjoint and run in parallel).
class MessageLedger {
public:
    void record(int iteration, int stage, int holon, long long n = 1);
    void note_drop() { ++dropped_; }

    long long total() const { return total_; }
    long long dropped() const { return dropped_; }
    long long sync_total() const;

    long long total_through(int iteration) const;
    long long sync_through(int iteration) const;
    long long total_at(int iteration) const;
    long long sync_at(int iteration) const;
    // Message count of one stage of one iteration, summed over its holons.
    long long stage_total(int iteration, int stage) const;
    long long stage_sync(int iteration, int stage) const;

private:
    // iteration -> stage -> holon -> count
    std::map<int, std::map<int, std::map<int, long long>>> counts_;
    long long total_ = 0;
    long long dropped_ = 0;
};

struct FailureEvent {
    enum class Kind { NodeCrash, LinkCut };
    int at_iteration = 1;
    Kind kind = Kind::NodeCrash;
    std::vector<int> node_targets;
    std::vector<std::pair<int, int>> edge_targets;
};

// Simulated message substrate over one topology: delivers parent/child
// messages, accounts them in the ledger, and drops messages whose endpoint
// or edge has failed. Drops are signals to the sender, not faults.
class Network {
public:
    Network() = default;
    explicit Network(const TreeTopology* base) : base_(base) {}

    void set_context(int iteration, int stage, int holon);
    int context_iteration() const { return ctx_iter_; }
    int context_stage() const { return ctx_stage_; }

    // Returns false when the message was dropped (dead endpoint or cut edge).
    bool deliver(const Message& m);

    // Applies a failure event at the current iteration boundary. Duplicate
    // targets are idempotent; empty targets are a no-op.
    void inject(const FailureEvent& ev);

    bool node_alive(int node) const { return !failed_nodes_.count(node); }
    bool edge_alive(int a, int b) const;

    const MessageLedger& ledger() const { return ledger_; }
    MessageLedger& ledger() { return ledger_; }

private:
    const TreeTopology* base_ = nullptr;
    std::set<int> failed_nodes_;
    std::set<std::pair<int, int>> cut_edges_;
    MessageLedger ledger_;
    int ctx_iter_ = 1;
    int ctx_stage_ = 0;
    int ctx_holon_ = 0;
};

}  // namespace holarchy
