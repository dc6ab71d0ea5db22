#include "blindpsi/protocol/driver.hpp"

#include <algorithm>
#include <stdexcept>

#include "blindpsi/protocol/client.hpp"
#include "blindpsi/protocol/server.hpp"
#include "blindpsi/secrets/oracle.hpp"
#include "blindpsi/secrets/sharing.hpp"

namespace blindpsi::protocol {

using qsim::Party;
using qsim::QubitId;
using transport::Bus;
using transport::Kind;
using transport::Lane;
using transport::Message;
using transport::pack_u32;
using transport::unpack_u32;

namespace {

// ANGLE_SHARE payload tags
enum : uint8_t { kShPad = 1, kShPlus = 2, kShR = 3, kShBatch = 4, kShPadHandoff = 5 };
// CLASSIC_BITS payload tags
enum : uint8_t { kCbRShares = 1, kCbHalf = 2 };

// rng stream tags
enum : uint64_t { kTagC1 = 11, kTagC2 = 12, kTagServer = 13, kTagInstance = 17, kTagHash = 23 };

struct Ctx {
    const mbqc::MeasurementPattern* pattern;
    RunConfig cfg;
    Bus bus;
    qsim::QubitStore store;
    secrets::Oracle oracle;
    ClientState c1, c2;
    ServerState server;
    std::vector<Angle8> deltas;

    Ctx(const mbqc::MeasurementPattern* p, const RunConfig& config, uint64_t seed)
        : pattern(p),
          cfg(config),
          oracle(p),
          server(&p->graph, &store, substream(seed, {kTagServer}))
    {
        c1.id = 1;
        c1.rng = substream(seed, {kTagC1});
        c2.id = 2;
        c2.rng = substream(seed, {kTagC2});
        c1.sabotage = c2.sabotage = config.sabotage;
        if (config.sabotage == Sabotage::CorruptDecoy) {
            c1.misbehaves = config.corrupt_client == 1;
            c2.misbehaves = config.corrupt_client == 2;
        }
    }

    ClientState& client(int k) { return k == 1 ? c1 : c2; }
    Party party(int k) const { return k == 1 ? Party::C1 : Party::C2; }
    Lane lane_cs(int k) const { return k == 1 ? Lane::C1_S : Lane::C2_S; }
    Lane lane_co(int k) const { return k == 1 ? Lane::C1_O : Lane::C2_O; }
};

void announce_to_clients(Ctx& ctx, Kind kind, mbqc::Vertex v, int bit)
{
    for (int k : {1, 2}) {
        auto payload = pack_u32(v);
        payload.push_back(uint8_t(bit));
        ctx.bus.send(Party::Server, ctx.lane_cs(k), kind, payload);
        ctx.bus.recv(ctx.party(k), ctx.lane_cs(k));
    }
}

// Deposit one ANGLE_SHARE message from client k to the oracle and dispatch
// it on the oracle side.
void deposit(Ctx& ctx, int k, std::vector<uint8_t> payload)
{
    ctx.bus.send(ctx.party(k), ctx.lane_co(k), Kind::ANGLE_SHARE, std::move(payload));
    const Message msg = ctx.bus.recv(Party::Oracle, ctx.lane_co(k));
    const auto& p = msg.payload;
    const mbqc::Vertex v = unpack_u32(p, 1);
    switch (p[0]) {
        case kShPad:
            ctx.oracle.deposit_c_share(k, v, p[5]);
            ctx.oracle.deposit_own_angle_share(k, v, Angle8(p[6]));
            break;
        case kShPlus:
            ctx.oracle.deposit_plus_angle_share(k, v, p[5], Angle8(p[6]));
            break;
        case kShR:
            ctx.oracle.deposit_r_share(k, v, p[5], p[6]);
            break;
        default: throw std::runtime_error("bad oracle deposit");
    }
}

// Protocol 1: client k ships a batch of L states for vertex v, the server
// keeps one and checks the rest in the bases the clients reveal. Returns the
// surviving qubit; the kept angle's shares end up on the oracle tape.
QubitId protocol1(Ctx& ctx, int k, mbqc::Vertex v)
{
    ClientState& ck = ctx.client(k);
    ClientState& cother = ctx.client(3 - k);
    const int L = ctx.cfg.l_batch;

    int corrupt_idx = -1;
    if (ck.misbehaves) corrupt_idx = int(ck.rng.below(uint32_t(L)));

    std::vector<QubitId> batch;
    std::vector<Angle8> angles;
    for (int l = 0; l < L; ++l) {
        const Angle8 theta = ck.draw_angle();
        angles.push_back(theta);
        const Angle8 sent = (l == corrupt_idx) ? theta + kPiAngle : theta;
        const QubitId q = ctx.store.fresh_plus(ctx.party(k), sent);
        auto payload = pack_u32(v);
        auto qb = pack_u32(q);
        payload.insert(payload.end(), qb.begin(), qb.end());
        payload.push_back(uint8_t(l + 1));
        ctx.bus.send(ctx.party(k), ctx.lane_cs(k), Kind::QUBIT, payload);
        ctx.store.transfer(q, ctx.party(k), Party::Server);
        const Message m = ctx.bus.recv(Party::Server, ctx.lane_cs(k));
        batch.push_back(unpack_u32(m.payload, 4));
    }

    // split every angle, hand the other client its halves in one message
    std::vector<Angle8> mine(L), theirs(L);
    for (int l = 0; l < L; ++l) {
        auto [s1, s2] = secrets::share_angle(angles[l], ck.rng);
        mine[l] = (k == 1) ? s1.value : s2.value;
        theirs[l] = (k == 1) ? s2.value : s1.value;
    }
    {
        std::vector<uint8_t> payload{kShBatch};
        auto vb = pack_u32(v);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(k));
        payload.push_back(uint8_t(L));
        for (int l = 0; l < L; ++l) payload.push_back(theirs[l].v);
        ctx.bus.send(ctx.party(k), Lane::C1_C2, Kind::ANGLE_SHARE, payload);
        const Message m = ctx.bus.recv(ctx.party(3 - k), Lane::C1_C2);
        std::vector<Angle8> got;
        for (int l = 0; l < L; ++l) got.push_back(Angle8(m.payload[7 + l]));
        cother.held_batch[ClientState::batch_key(v, k)] = got;
    }
    ck.held_batch[ClientState::batch_key(v, k)] = mine;

    const uint32_t keep = ctx.server.choose_keep(uint32_t(L));
    for (int j : {1, 2}) {
        auto payload = pack_u32(v);
        payload.push_back(uint8_t(keep));
        ctx.bus.send(Party::Server, ctx.lane_cs(j), Kind::TEST_REQ, payload);
        ctx.bus.recv(ctx.party(j), ctx.lane_cs(j));
    }

    // each client reveals its halves for everything but the kept state
    std::array<std::vector<uint8_t>, 2> reveal;
    for (int j : {1, 2}) {
        const auto& held = ctx.client(j).held_batch[ClientState::batch_key(v, k)];
        std::vector<uint8_t> payload = pack_u32(v);
        payload.push_back(uint8_t(L - 1));
        for (int l = 0; l < L; ++l) {
            if (uint32_t(l) == keep) continue;
            payload.push_back(uint8_t(l));
            payload.push_back(held[l].v);
        }
        ctx.bus.send(ctx.party(j), ctx.lane_cs(j), Kind::TEST_REVEAL, payload);
        reveal[j - 1] = ctx.bus.recv(Party::Server, ctx.lane_cs(j)).payload;
    }
    for (int i = 0; i < L - 1; ++i) {
        const int l = reveal[0][5 + 2 * i];
        const Angle8 basis = Angle8(reveal[0][6 + 2 * i]) + Angle8(reveal[1][6 + 2 * i]);
        if (!ctx.server.test_decoy(batch[l], basis)) {
            const std::string why = "honesty test failed at vertex " + std::to_string(v) +
                                    " state " + std::to_string(l);
            ctx.bus.raise_abort(Party::Server, ctx.lane_cs(k), why);
            throw transport::ProtocolAbort(why);
        }
    }

    for (int j : {1, 2}) {
        const Angle8 held = ctx.client(j).held_batch[ClientState::batch_key(v, k)][keep];
        std::vector<uint8_t> payload{kShPlus};
        auto vb = pack_u32(v);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(k));
        payload.push_back(held.v);
        deposit(ctx, j, payload);
        ctx.client(j).held_batch.erase(ClientState::batch_key(v, k));
    }
    return batch[keep];
}

// Layer-0 preparation: the owner pads |b> with X^c Z(theta) and ships it,
// the other client contributes a tested |+_theta'> state, and the server
// folds the two together (CNOT + computational measurement, outcome t).
void prepare_input(Ctx& ctx, mbqc::Vertex v, int bit, int owner)
{
    ClientState& ck = ctx.client(owner);
    const int c = ck.rng.bit();
    const Angle8 theta = ck.draw_angle();
    ck.pads[v] = {c, theta};

    QubitId q = ctx.store.fresh_basis(ctx.party(owner), bit);
    ctx.store.z(ctx.party(owner), q, theta);
    if (c) ctx.store.x(ctx.party(owner), q);
    {
        auto payload = pack_u32(v);
        auto qb = pack_u32(q);
        payload.insert(payload.end(), qb.begin(), qb.end());
        payload.push_back(0);
        ctx.bus.send(ctx.party(owner), ctx.lane_cs(owner), Kind::QUBIT, payload);
        ctx.store.transfer(q, ctx.party(owner), Party::Server);
        const Message m = ctx.bus.recv(Party::Server, ctx.lane_cs(owner));
        ctx.server.bind_vertex(v, unpack_u32(m.payload, 4));
    }

    // split the pad and let both clients deposit their halves
    auto [cs1, cs2] = secrets::share_bit(c, ck.rng);
    auto [ts1, ts2] = secrets::share_angle(theta, ck.rng);
    const int my_c = (owner == 1) ? cs1 : cs2;
    const int other_c = (owner == 1) ? cs2 : cs1;
    const Angle8 my_t = (owner == 1) ? ts1.value : ts2.value;
    const Angle8 other_t = (owner == 1) ? ts2.value : ts1.value;
    {
        std::vector<uint8_t> payload{kShPadHandoff};
        auto vb = pack_u32(v);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(other_c));
        payload.push_back(other_t.v);
        ctx.bus.send(ctx.party(owner), Lane::C1_C2, Kind::ANGLE_SHARE, payload);
        const Message m = ctx.bus.recv(ctx.party(3 - owner), Lane::C1_C2);
        ctx.client(3 - owner).held_pad_shares[v] = {m.payload[5], Angle8(m.payload[6])};
    }
    {
        std::vector<uint8_t> payload{kShPad};
        auto vb = pack_u32(v);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(my_c));
        payload.push_back(my_t.v);
        deposit(ctx, owner, payload);
    }
    {
        std::vector<uint8_t> payload{kShPad};
        auto vb = pack_u32(v);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(other_c));
        payload.push_back(other_t.v);
        deposit(ctx, 3 - owner, payload);
    }

    const QubitId contrib = protocol1(ctx, 3 - owner, v);
    const int t = ctx.server.merge_contribution(ctx.server.qubit_at(v), contrib);
    announce_to_clients(ctx, Kind::OUTCOME_T, v, t);
    ctx.oracle.record_t(v, t);
}

// Non-input preparation: both clients run their test batches, the server
// merges the survivors keeping the second client's qubit.
void prepare_noninput(Ctx& ctx, mbqc::Vertex v)
{
    const QubitId q1 = protocol1(ctx, 1, v);
    const QubitId q2 = protocol1(ctx, 2, v);
    const int t = ctx.server.merge_contribution(q2, q1);
    announce_to_clients(ctx, Kind::OUTCOME_T, v, t);
    ctx.oracle.record_t(v, t);
    ctx.server.bind_vertex(v, q2);
}

// One measurement round: fresh r shares, the oracle assembles delta, the
// server measures and announces m.
void computation_step(Ctx& ctx, mbqc::Vertex v)
{
    for (int k : {1, 2}) {
        ClientState& ck = ctx.client(k);
        const int r = ck.draw_r();
        ck.r_own[v] = r;
        auto [s1, s2] = secrets::share_bit(r, ck.rng);
        const int my = (k == 1) ? s1 : s2;
        const int other = (k == 1) ? s2 : s1;
        ck.r_held[v][k - 1] = my;
        {
            std::vector<uint8_t> payload{kShR};
            auto vb = pack_u32(v);
            payload.insert(payload.end(), vb.begin(), vb.end());
            payload.push_back(uint8_t(k));
            payload.push_back(uint8_t(other));
            ctx.bus.send(ctx.party(k), Lane::C1_C2, Kind::ANGLE_SHARE, payload);
            const Message m = ctx.bus.recv(ctx.party(3 - k), Lane::C1_C2);
            ctx.client(3 - k).r_held[v][k - 1] = m.payload[6];
        }
        for (int j : {1, 2}) {
            std::vector<uint8_t> payload{kShR};
            auto vb = pack_u32(v);
            payload.insert(payload.end(), vb.begin(), vb.end());
            payload.push_back(uint8_t(k));
            payload.push_back(uint8_t(ctx.client(j).r_held[v][k - 1]));
            deposit(ctx, j, payload);
        }
    }

    const Angle8 delta = ctx.oracle.delta(v);
    {
        auto payload = pack_u32(v);
        payload.push_back(delta.v);
        ctx.bus.send(Party::Oracle, Lane::S_O, Kind::DELTA, payload);
        ctx.bus.recv(Party::Server, Lane::S_O);
    }
    const int m = ctx.server.measure_at(v, delta);
    announce_to_clients(ctx, Kind::OUTCOME_M, v, m);
    for (int k : {1, 2}) ctx.client(k).m_log[v] = m;
    ctx.oracle.record_m(v, m);
    ctx.deltas.push_back(delta);
}

// Output hand-back: the assigned client collects the missing r shares from
// its peer, reconstructs the s parities, undoes Z^{sZ} X^{sX} and reads out.
int output_return(Ctx& ctx, mbqc::Vertex o, int assigned)
{
    ClientState& ck = ctx.client(assigned);
    ClientState& peer = ctx.client(3 - assigned);

    std::vector<mbqc::Vertex> deps = ctx.pattern->xdeps[o];
    deps.insert(deps.end(), ctx.pattern->zdeps[o].begin(), ctx.pattern->zdeps[o].end());
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());

    std::vector<uint8_t> payload{kCbRShares, uint8_t(deps.size())};
    for (mbqc::Vertex d : deps) {
        auto vb = pack_u32(d);
        payload.insert(payload.end(), vb.begin(), vb.end());
        payload.push_back(uint8_t(peer.r_held[d][0]));
        payload.push_back(uint8_t(peer.r_held[d][1]));
    }
    ctx.bus.send(ctx.party(3 - assigned), Lane::C1_C2, Kind::CLASSIC_BITS, payload);
    const Message shares = ctx.bus.recv(ctx.party(assigned), Lane::C1_C2);

    std::map<mbqc::Vertex, int> s;
    for (size_t i = 0; i < deps.size(); ++i) {
        const mbqc::Vertex d = unpack_u32(shares.payload, 2 + 6 * i);
        const int their_r1 = shares.payload[2 + 6 * i + 4];
        const int their_r2 = shares.payload[2 + 6 * i + 5];
        const int r = (ck.r_held[d][0] ^ their_r1) ^ (ck.r_held[d][1] ^ their_r2);
        s[d] = secrets::s_value(ck.m_log.at(d), r);
    }
    int s_x = 0, s_z = 0;
    for (mbqc::Vertex d : ctx.pattern->xdeps[o]) s_x ^= s.at(d);
    for (mbqc::Vertex d : ctx.pattern->zdeps[o]) s_z ^= s.at(d);

    const QubitId q = ctx.server.qubit_at(o);
    {
        auto payload2 = pack_u32(o);
        auto qb = pack_u32(q);
        payload2.insert(payload2.end(), qb.begin(), qb.end());
        ctx.bus.send(Party::Server, ctx.lane_cs(assigned), Kind::OUTPUT_QUBIT, payload2);
        ctx.server.release_output(o, ctx.party(assigned));
        ctx.bus.recv(ctx.party(assigned), ctx.lane_cs(assigned));
    }
    if (s_x) ctx.store.x(ctx.party(assigned), q);
    if (s_z) ctx.store.z(ctx.party(assigned), q, kPiAngle);
    return ctx.store.measure_computational(ctx.party(assigned), q, ck.rng);
}

}  // namespace

InstanceResult run_instance(const InstanceSpec& spec)
{
    Ctx ctx(spec.pattern, spec.config, spec.seed);
    InstanceResult result;
    const mbqc::OpenGraph& g = spec.pattern->graph;
    const uint32_t q_layers = g.n_layers - 1;

    const std::array<int, 3> owners = {1, 2, 1};
    for (uint32_t w = 0; w < 3; ++w) ctx.oracle.set_input_owner(g.inputs[w], owners[w]);

    try {
        for (uint32_t w = 0; w < 3; ++w)
            prepare_input(ctx, g.inputs[w], spec.input_bits[w], owners[w]);
        ctx.server.entangle_layer(0);

        for (uint32_t l = 0; l + 1 <= q_layers; ++l) {
            for (uint32_t w = 0; w < 3; ++w) {
                const mbqc::Vertex v = g.at(w, l + 1);
                if (l + 1 == q_layers)
                    ctx.server.prepare_output(v);
                else
                    prepare_noninput(ctx, v);
            }
            ctx.server.entangle_layer(l + 1);
            for (uint32_t w = 0; w < 3; ++w) computation_step(ctx, g.at(w, l));
        }

        const std::array<int, 3> assigned = {1, 2, spec.target_client};
        for (uint32_t w = 0; w < 3; ++w)
            result.output_bits[w] = output_return(ctx, g.outputs[w], assigned[w]);
    } catch (const transport::ProtocolAbort& e) {
        result.aborted = true;
        result.abort_reason = e.what();
    } catch (const qsim::QubitError& e) {
        result.aborted = true;
        result.abort_reason = std::string("register fault: ") + e.what();
    }

    result.deltas = std::move(ctx.deltas);
    result.transcript = std::move(ctx.bus.transcript());
    return result;
}

uint64_t expected_qubit_count(int lambda, int m, int l_batch)
{
    const uint64_t q = mbqc::toffoli_layer_count() - 1;
    const uint64_t per_instance =
        3 * (1 + uint64_t(l_batch)) + 3 * (q - 1) * 2 * uint64_t(l_batch) + 3;
    return uint64_t(lambda) * uint64_t(m) * per_instance;
}

bool p1_corruption_detected(uint64_t seed, int l_batch)
{
    static const mbqc::MeasurementPattern pattern = mbqc::compile_toffoli();
    RunConfig cfg;
    cfg.m = 1;
    cfg.l_batch = l_batch;
    cfg.sabotage = Sabotage::CorruptDecoy;
    cfg.corrupt_client = 1;
    Ctx ctx(&pattern, cfg, seed);
    try {
        protocol1(ctx, 1, 0);
    } catch (const transport::ProtocolAbort&) {
        return true;
    }
    return false;
}

RunResult psi_run(const std::vector<std::string>& items_a,
                  const std::vector<std::string>& items_b, const RunConfig& config)
{
    RunConfig cfg = config;
    if (cfg.m == 0) cfg.m = int(std::max(items_a.size(), items_b.size()));
    if (cfg.m == 0) cfg.m = 1;
    cfg.validate();
    if (items_a.size() > size_t(cfg.m) || items_b.size() > size_t(cfg.m))
        throw std::invalid_argument("set larger than m");

    qsim::StateVector::set_qubit_cap(cfg.qubit_cap);

    RunResult out;
    out.params.m_bits = uint32_t(cfg.lambda) * uint32_t(cfg.m);
    out.params.k = bloom::k_opt(out.params.m_bits, cfg.m);
    out.params.hash_seed = mix64(cfg.seed, kTagHash);

    bloom::BloomFilter fa(out.params), fb(out.params);
    bloom::ItemDictionary da, db;
    for (const auto& a : items_a) {
        fa.insert(a);
        da.insert(out.params, a);
    }
    for (const auto& b : items_b) {
        fb.insert(b);
        db.insert(out.params, b);
    }

    static const mbqc::MeasurementPattern pattern = mbqc::compile_toffoli();
    const uint32_t n_pos = out.params.m_bits;
    out.instances = n_pos;

    std::vector<InstanceResult> results(n_pos);
    std::vector<InstanceSpec> specs(n_pos);
    for (uint32_t i = 0; i < n_pos; ++i) {
        specs[i].input_bits = {fa.bit(i), fb.bit(i), 0};
        specs[i].target_client = (i % 2 == 0) ? 1 : 2;
        specs[i].seed = mix64(mix64(cfg.seed, kTagInstance), i);
        specs[i].pattern = &pattern;
        specs[i].config = cfg;
    }

    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t i = 0; i < int64_t(n_pos); ++i) results[i] = run_instance(specs[i]);
    } else {
        for (uint32_t i = 0; i < n_pos; ++i) {
            results[i] = run_instance(specs[i]);
            if (results[i].aborted) break;
        }
    }

    for (uint32_t i = 0; i < n_pos; ++i) {
        out.transcript.append_all(results[i].transcript);
        if (results[i].aborted) {
            out.aborted = true;
            out.abort_reason = results[i].abort_reason;
            return out;
        }
    }

    // clients swap their halves of the AND vector over the client lane
    std::vector<int> and_bits(n_pos);
    for (uint32_t i = 0; i < n_pos; ++i) and_bits[i] = results[i].output_bits[2];
    Bus tail;
    for (int k : {1, 2}) {
        std::vector<uint8_t> payload{kCbHalf};
        uint32_t count = 0;
        for (uint32_t i = (k == 1 ? 0 : 1); i < n_pos; i += 2) ++count;
        auto cb = pack_u32(count);
        payload.insert(payload.end(), cb.begin(), cb.end());
        for (uint32_t i = (k == 1 ? 0 : 1); i < n_pos; i += 2) {
            auto pb = pack_u32(i);
            payload.insert(payload.end(), pb.begin(), pb.end());
            payload.push_back(uint8_t(and_bits[i]));
        }
        tail.send(k == 1 ? Party::C1 : Party::C2, Lane::C1_C2, Kind::CLASSIC_BITS, payload);
        tail.recv(k == 1 ? Party::C2 : Party::C1, Lane::C1_C2);
    }
    out.transcript.append_all(tail.transcript());

    std::vector<uint8_t> and_u8(and_bits.begin(), and_bits.end());
    out.and_bits = and_bits;
    out.intersection_c1 = da.items_matching(and_u8);
    out.intersection_c2 = db.items_matching(and_u8);
    return out;
}

}  // namespace blindpsi::protocol
