#include "blindpsi/secrets/oracle.hpp"

#include <stdexcept>

namespace blindpsi::secrets {

namespace {

int check_client(int c)
{
    if (c != 1 && c != 2) throw std::invalid_argument("client id must be 1 or 2");
    return c;
}

template <typename T>
T require(const std::optional<T>& opt, const char* what, Vertex v)
{
    if (!opt)
        throw std::runtime_error(std::string("oracle tape missing ") + what + " for vertex " +
                                 std::to_string(v));
    return *opt;
}

}  // namespace

Oracle::Oracle(const mbqc::MeasurementPattern* pattern)
    : pattern_(pattern), tape_(pattern->graph.vertex_count())
{
}

void Oracle::set_input_owner(Vertex v, int client) { tape_.at(v).owner_client = check_client(client); }

void Oracle::deposit_c_share(int depositor, Vertex v, int share)
{
    tape_.at(v).c_sh[check_client(depositor) - 1] = share & 1;
}

void Oracle::deposit_own_angle_share(int depositor, Vertex v, Angle8 share)
{
    tape_.at(v).own_sh[check_client(depositor) - 1] = share;
}

void Oracle::deposit_plus_angle_share(int depositor, Vertex v, int of_client, Angle8 share)
{
    tape_.at(v).plus_sh[check_client(of_client) - 1][check_client(depositor) - 1] = share;
}

void Oracle::deposit_r_share(int depositor, Vertex v, int of_client, int share)
{
    tape_.at(v).r_sh[check_client(of_client) - 1][check_client(depositor) - 1] = share & 1;
}

void Oracle::record_t(Vertex v, int t) { tape_.at(v).t = t & 1; }

int Oracle::reconstruct_r(const QubitRecord& rec, Vertex v) const
{
    const int r1 = reconstruct_bit(require(rec.r_sh[0][0], "r1 share", v),
                                   require(rec.r_sh[0][1], "r1 share", v));
    const int r2 = reconstruct_bit(require(rec.r_sh[1][0], "r2 share", v),
                                   require(rec.r_sh[1][1], "r2 share", v));
    // r = r^1 + r^2; only the parity enters pi*r
    return (r1 + r2) % 2;
}

Angle8 Oracle::reconstruct_theta(const QubitRecord& rec, Vertex v) const
{
    const int t = require(rec.t, "t outcome", v);
    if (rec.owner_client != 0) {
        // prepared from the owner's padded qubit and the other client's
        // contribution: theta = theta^own + (-1)^(t + c) theta^other
        const Angle8 own = require(rec.own_sh[0], "own angle share", v) +
                           require(rec.own_sh[1], "own angle share", v);
        const int other = 3 - rec.owner_client;
        const Angle8 contrib = require(rec.plus_sh[other - 1][0], "contrib share", v) +
                               require(rec.plus_sh[other - 1][1], "contrib share", v);
        const int c = reconstruct_bit(require(rec.c_sh[0], "c share", v),
                                      require(rec.c_sh[1], "c share", v));
        return own + contrib.times_sign(((t + c) % 2) ? -1 : +1);
    }
    // merged from both clients' plus states: theta = theta^2 + (-1)^t theta^1
    const Angle8 theta1 = require(rec.plus_sh[0][0], "theta1 share", v) +
                          require(rec.plus_sh[0][1], "theta1 share", v);
    const Angle8 theta2 = require(rec.plus_sh[1][0], "theta2 share", v) +
                          require(rec.plus_sh[1][1], "theta2 share", v);
    return theta2 + theta1.times_sign(t ? -1 : +1);
}

void Oracle::record_m(Vertex v, int m)
{
    QubitRecord& rec = tape_.at(v);
    rec.m = m & 1;
    rec.s = s_value(m, reconstruct_r(rec, v));
}

int Oracle::s_parity(const std::vector<Vertex>& deps) const
{
    int acc = 0;
    for (Vertex i : deps) acc ^= require(tape_.at(i).s, "s value", i);
    return acc;
}

Angle8 Oracle::delta(Vertex v) const
{
    const QubitRecord& rec = tape_.at(v);
    const int s_x = s_parity(pattern_->xdeps[v]);
    const int s_z = s_parity(pattern_->zdeps[v]);

    int c = 0;
    if (rec.owner_client != 0)
        c = reconstruct_bit(require(rec.c_sh[0], "c share", v),
                            require(rec.c_sh[1], "c share", v));

    int c_pred = 0;
    for (Vertex p : pattern_->xdeps[v]) {
        const QubitRecord& pr = tape_.at(p);
        if (pr.owner_client != 0)
            c_pred = reconstruct_bit(require(pr.c_sh[0], "c share", p),
                                     require(pr.c_sh[1], "c share", p));
    }

    return delta_formula(pattern_->phi[v], c, s_x, s_z, c_pred, reconstruct_r(rec, v),
                         reconstruct_theta(rec, v));
}

std::pair<int, int> Oracle::output_corrections(Vertex v, int requesting_client,
                                               int assigned_client) const
{
    if (check_client(requesting_client) != check_client(assigned_client))
        throw std::runtime_error("output corrections requested by the wrong client");
    return {s_parity(pattern_->xdeps[v]), s_parity(pattern_->zdeps[v])};
}

}  // namespace blindpsi::secrets
