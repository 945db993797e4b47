#include "holarchy/netsim.hpp"

#include <algorithm>
#include <stdexcept>

namespace holarchy {

void MessageLedger::record(int iteration, int stage, int holon, long long n) {
    counts_[iteration][stage][holon] += n;
    total_ += n;
}

long long MessageLedger::sync_total() const {
    long long acc = 0;
    for (const auto& [iter, stages] : counts_)
        for (const auto& [stage, holons] : stages) {
            long long mx = 0;
            for (const auto& [h, n] : holons) mx = std::max(mx, n);
            acc += mx;
        }
    return acc;
}

long long MessageLedger::total_through(int iteration) const {
    long long acc = 0;
    for (const auto& [iter, stages] : counts_) {
        if (iter > iteration) break;
        for (const auto& [stage, holons] : stages)
            for (const auto& [h, n] : holons) acc += n;
    }
    return acc;
}

long long MessageLedger::sync_through(int iteration) const {
    long long acc = 0;
    for (const auto& [iter, stages] : counts_) {
        if (iter > iteration) break;
        for (const auto& [stage, holons] : stages) {
            long long mx = 0;
            for (const auto& [h, n] : holons) mx = std::max(mx, n);
            acc += mx;
        }
    }
    return acc;
}

long long MessageLedger::total_at(int iteration) const {
    return total_through(iteration) - total_through(iteration - 1);
}

long long MessageLedger::sync_at(int iteration) const {
    return sync_through(iteration) - sync_through(iteration - 1);
}

long long MessageLedger::stage_total(int iteration, int stage) const {
    auto it = counts_.find(iteration);
    if (it == counts_.end()) return 0;
    auto st = it->second.find(stage);
    if (st == it->second.end()) return 0;
    long long acc = 0;
    for (const auto& [h, n] : st->second) acc += n;
    return acc;
}

long long MessageLedger::stage_sync(int iteration, int stage) const {
    auto it = counts_.find(iteration);
    if (it == counts_.end()) return 0;
    auto st = it->second.find(stage);
    if (st == it->second.end()) return 0;
    long long mx = 0;
    for (const auto& [h, n] : st->second) mx = std::max(mx, n);
    return mx;
}

void Network::set_context(int iteration, int stage, int holon) {
    ctx_iter_ = iteration;
    ctx_stage_ = stage;
    ctx_holon_ = holon;
}

bool Network::deliver(const Message& m) {
    if (!node_alive(m.from) || !node_alive(m.to) || !edge_alive(m.from, m.to)) {
        ledger_.note_drop();
        return false;
    }
    ledger_.record(ctx_iter_, ctx_stage_, ctx_holon_);
    return true;
}

void Network::inject(const FailureEvent& ev) {
    if (ev.at_iteration < ctx_iter_)
        throw std::invalid_argument("inject: failure event scheduled in the past");
    if (ev.kind == FailureEvent::Kind::NodeCrash) {
        for (int n : ev.node_targets) {
            if (base_ && (n < 0 || n >= base_->size()))
                throw std::invalid_argument("inject: target node outside topology");
            failed_nodes_.insert(n);
        }
    } else {
        for (auto [a, b] : ev.edge_targets) {
            if (base_ && !base_->adjacent(a, b))
                throw std::invalid_argument("inject: target edge not in topology");
            cut_edges_.insert({std::min(a, b), std::max(a, b)});
        }
    }
}

bool Network::edge_alive(int a, int b) const {
    return !cut_edges_.count({std::min(a, b), std::max(a, b)});
}

}  // namespace holarchy
