#pragma once

#include <map>
#include <optional>
#include <vector>

#include "blindpsi/mbqc/graph.hpp"
#include "blindpsi/qsim/store.hpp"
#include "blindpsi/rng.hpp"
#include "blindpsi/transport/bus.hpp"

namespace blindpsi::protocol {

// The server's whole world: the public graph, a register of qubit handles,
// measurement angles it is told, and outcomes it announces. It never sees an
// angle before a qubit is already hidden behind the clients' preparation;
// the only values it reconstructs are the revealed decoy bases.
class ServerState {
public:
    ServerState(const mbqc::OpenGraph* graph, qsim::QubitStore* store, Rng rng)
        : graph_(graph), store_(store), rng_(std::move(rng))
    {
    }

    // Store an arriving layer-0 qubit under its vertex.
    void bind_vertex(mbqc::Vertex v, qsim::QubitId q) { register_[v] = q; }
    qsim::QubitId qubit_at(mbqc::Vertex v) const { return register_.at(v); }

    // Honesty test: keep one state of the batch, measure the rest in the
    // reconstructed bases; every outcome must come out 0.
    uint32_t choose_keep(uint32_t batch_size) { return rng_.below(batch_size); }
    bool test_decoy(qsim::QubitId q, Angle8 revealed_basis)
    {
        return store_->measure_rotated(qsim::Party::Server, q, revealed_basis, rng_) == 0;
    }

    // Merge step common to the two preparation circuits: CNOT with the
    // surviving qubit as control, computational measurement of the other.
    int merge_contribution(qsim::QubitId survivor, qsim::QubitId absorbed)
    {
        store_->cnot(qsim::Party::Server, survivor, absorbed);
        return store_->measure_computational(qsim::Party::Server, absorbed, rng_);
    }

    // Locally prepared |+> for an output vertex.
    void prepare_output(mbqc::Vertex v)
    {
        register_[v] = store_->fresh_plus(qsim::Party::Server, Angle8{0});
    }

    // CZ for every edge whose later endpoint sits on this layer.
    void entangle_layer(uint32_t layer)
    {
        for (auto [a, b] : graph_->edges) {
            if (std::max(graph_->layer_of(a), graph_->layer_of(b)) != layer) continue;
            store_->cz(qsim::Party::Server, register_.at(a), register_.at(b));
        }
    }

    int measure_at(mbqc::Vertex v, Angle8 delta)
    {
        const int m = store_->measure_rotated(qsim::Party::Server, register_.at(v), delta, rng_);
        register_.erase(v);
        return m;
    }

    void release_output(mbqc::Vertex v, qsim::Party to)
    {
        store_->transfer(register_.at(v), qsim::Party::Server, to);
        register_.erase(v);
    }

private:
    const mbqc::OpenGraph* graph_;
    qsim::QubitStore* store_;
    Rng rng_;
    std::map<mbqc::Vertex, qsim::QubitId> register_;
};

}  // namespace blindpsi::protocol
