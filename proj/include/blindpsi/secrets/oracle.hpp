#pragma once

#include <optional>
#include <vector>

#include "blindpsi/mbqc/pattern.hpp"
#include "blindpsi/secrets/sharing.hpp"

namespace blindpsi::secrets {

using mbqc::Vertex;

// Per-qubit record on the oracle tape: deposited shares, public outcomes,
// and the s-ledger. Reassembled secrets never leave the oracle; the only
// derived value it releases is delta.
struct QubitRecord {
    int owner_client = 0;                      // inputs: 1 or 2, otherwise 0
    std::optional<int> c_sh[2];                // shares of the pad bit (inputs)
    std::optional<Angle8> own_sh[2];           // shares of theta^{owner} (inputs)
    std::optional<Angle8> plus_sh[2][2];       // [client k-1][depositor-1] contributed plus angles
    std::optional<int> r_sh[2][2];             // [client k-1][depositor-1] shares of r^k
    std::optional<int> t;                      // preparation outcome (public)
    std::optional<int> m;                      // measurement outcome (public)
    std::optional<int> s;                      // m xor r, oracle-internal
};

class OracleTape {
public:
    explicit OracleTape(uint32_t n_vertices) : rec_(n_vertices) {}
    QubitRecord& at(Vertex v) { return rec_.at(v); }
    const QubitRecord& at(Vertex v) const { return rec_.at(v); }

private:
    std::vector<QubitRecord> rec_;
};

// The computation-oracle functionality. Both clients hand it the agreed
// pattern at setup; afterwards they deposit shares, the driver records the
// public t/m announcements, and the server may ask for delta and nothing
// else.
class Oracle {
public:
    explicit Oracle(const mbqc::MeasurementPattern* pattern);

    void set_input_owner(Vertex v, int client);

    void deposit_c_share(int depositor, Vertex v, int share);
    void deposit_own_angle_share(int depositor, Vertex v, Angle8 share);
    void deposit_plus_angle_share(int depositor, Vertex v, int of_client, Angle8 share);
    void deposit_r_share(int depositor, Vertex v, int of_client, int share);

    void record_t(Vertex v, int t);
    void record_m(Vertex v, int m);  // needs the r shares; extends the s-ledger

    // The blinded measurement angle for vertex v. Released to the server.
    Angle8 delta(Vertex v) const;

    // (sX, sZ) for an output vertex; only the assigned client may ask.
    std::pair<int, int> output_corrections(Vertex v, int requesting_client,
                                           int assigned_client) const;

    const OracleTape& tape() const { return tape_; }  // test access

private:
    const mbqc::MeasurementPattern* pattern_;
    OracleTape tape_;

    int reconstruct_r(const QubitRecord& rec, Vertex v) const;
    Angle8 reconstruct_theta(const QubitRecord& rec, Vertex v) const;
    int s_parity(const std::vector<Vertex>& deps) const;
};

}  // namespace blindpsi::secrets
