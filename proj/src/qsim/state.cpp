#include "blindpsi/qsim/state.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

#include "blindpsi/qsim/kernels.hpp"

namespace blindpsi::qsim {

namespace {

int default_cap()
{
    if (const char* env = std::getenv("BLINDPSI_QUBIT_CAP")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 24;
}

std::atomic<int> g_cap{default_cap()};
std::atomic<bool> g_parallel{true};
constexpr int kParallelThresholdQubits = 14;

const cplx kInvSqrt2 = cplx(1.0 / std::sqrt(2.0), 0.0);

}  // namespace

int StateVector::qubit_cap() { return g_cap.load(); }
void StateVector::set_qubit_cap(int cap) { g_cap.store(cap); }
void StateVector::set_parallel(bool on) { g_parallel.store(on); }
bool StateVector::parallel_enabled() { return g_parallel.load(); }
int StateVector::parallel_threshold_qubits() { return kParallelThresholdQubits; }

bool StateVector::wide() const
{
    return g_parallel.load() && int(labels_.size()) >= kParallelThresholdQubits;
}

StateVector StateVector::basis(QubitId q, int bit)
{
    StateVector s;
    s.labels_ = {q};
    s.amps_.assign(2, cplx(0.0, 0.0));
    s.amps_[bit ? 1 : 0] = cplx(1.0, 0.0);
    return s;
}

StateVector StateVector::plus(QubitId q, Angle8 theta)
{
    StateVector s;
    s.labels_ = {q};
    s.amps_ = {kInvSqrt2, kInvSqrt2 * theta.phase()};
    return s;
}

bool StateVector::has(QubitId q) const
{
    return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

std::size_t StateVector::position(QubitId q) const
{
    auto it = std::find(labels_.begin(), labels_.end(), q);
    if (it == labels_.end())
        throw QubitError("unknown qubit label " + std::to_string(q));
    return std::size_t(it - labels_.begin());
}

void StateVector::attach(StateVector other)
{
    for (QubitId q : other.labels_)
        if (has(q)) throw QubitError("label clash on attach: " + std::to_string(q));
    const std::size_t total = labels_.size() + other.labels_.size();
    if (int(total) > qubit_cap())
        throw QubitError("qubit cap exceeded: " + std::to_string(total) + " > " +
                         std::to_string(qubit_cap()));

    std::vector<cplx> merged(amps_.size() * other.amps_.size());
    for (std::size_t j = 0; j < other.amps_.size(); ++j) {
        const cplx bj = other.amps_[j];
        for (std::size_t i = 0; i < amps_.size(); ++i)
            merged[(j << labels_.size()) | i] = bj * amps_[i];
    }
    amps_ = std::move(merged);
    labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
}

void StateVector::x(QubitId q)
{
    const std::size_t m = mask_of(q);
    if (wide())
        kernels::apply_x_omp(amps_.data(), amps_.size(), m);
    else
        kernels::apply_x_serial(amps_.data(), amps_.size(), m);
}

void StateVector::z(QubitId q, Angle8 theta)
{
    const std::size_t m = mask_of(q);
    const cplx ph = theta.phase();
    if (wide())
        kernels::apply_phase_omp(amps_.data(), amps_.size(), m, ph);
    else
        kernels::apply_phase_serial(amps_.data(), amps_.size(), m, ph);
}

void StateVector::h(QubitId q)
{
    const std::size_t m = mask_of(q);
    const cplx mat[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    if (wide())
        kernels::apply_1q_omp(amps_.data(), amps_.size(), m, mat);
    else
        kernels::apply_1q_serial(amps_.data(), amps_.size(), m, mat);
}

void StateVector::cz(QubitId a, QubitId b)
{
    if (a == b) throw QubitError("cz needs two distinct targets");
    const std::size_t ma = mask_of(a), mb = mask_of(b);
    if (wide())
        kernels::apply_cz_omp(amps_.data(), amps_.size(), ma, mb);
    else
        kernels::apply_cz_serial(amps_.data(), amps_.size(), ma, mb);
}

void StateVector::cnot(QubitId control, QubitId target)
{
    if (control == target) throw QubitError("cnot needs two distinct targets");
    const std::size_t mc = mask_of(control), mt = mask_of(target);
    if (wide())
        kernels::apply_cnot_omp(amps_.data(), amps_.size(), mc, mt);
    else
        kernels::apply_cnot_serial(amps_.data(), amps_.size(), mc, mt);
}

void StateVector::remove_qubit(QubitId q, int bit, double prob)
{
    const std::size_t pos = position(q);
    const std::size_t m = std::size_t(1) << pos;
    std::vector<cplx> out(amps_.size() >> 1);
    const double inv = 1.0 / std::sqrt(prob);
    if (wide())
        kernels::collapse_omp(amps_.data(), amps_.size(), m, bit, inv, out.data());
    else
        kernels::collapse_serial(amps_.data(), amps_.size(), m, bit, inv, out.data());
    amps_ = std::move(out);
    labels_.erase(labels_.begin() + pos);
}

int StateVector::measure_computational(QubitId q, Rng& rng)
{
    const std::size_t m = mask_of(q);
    const double p1 = wide() ? kernels::prob_one_omp(amps_.data(), amps_.size(), m)
                             : kernels::prob_one_serial(amps_.data(), amps_.size(), m);
    const int bit = rng.real() < p1 ? 1 : 0;
    remove_qubit(q, bit, bit ? p1 : 1.0 - p1);
    return bit;
}

int StateVector::measure_rotated(QubitId q, Angle8 delta, Rng& rng)
{
    // Rotate {|+_d>,|-_d>} onto {|0>,|1>}: Z(-d) then H.
    z(q, -delta);
    h(q);
    return measure_computational(q, rng);
}

double StateVector::collapse_computational(QubitId q, int outcome)
{
    const std::size_t m = mask_of(q);
    const double p1 = wide() ? kernels::prob_one_omp(amps_.data(), amps_.size(), m)
                             : kernels::prob_one_serial(amps_.data(), amps_.size(), m);
    const double p = outcome ? p1 : 1.0 - p1;
    if (p < 1e-30) throw QubitError("forced outcome has zero probability");
    remove_qubit(q, outcome, p);
    return p;
}

double StateVector::collapse_rotated(QubitId q, Angle8 delta, int outcome)
{
    z(q, -delta);
    h(q);
    return collapse_computational(q, outcome);
}

double StateVector::norm() const
{
    const double n2 = wide() ? kernels::norm_sq_omp(amps_.data(), amps_.size())
                             : kernels::norm_sq_serial(amps_.data(), amps_.size());
    return std::sqrt(n2);
}

cplx StateVector::inner(const StateVector& other) const
{
    if (labels_.size() != other.labels_.size())
        throw QubitError("dimension mismatch in inner product");
    // map our bit positions onto the other register's
    std::vector<std::size_t> other_mask(labels_.size());
    for (std::size_t p = 0; p < labels_.size(); ++p)
        other_mask[p] = std::size_t(1) << other.position(labels_[p]);

    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t j = 0;
        for (std::size_t p = 0; p < labels_.size(); ++p)
            if (i & (std::size_t(1) << p)) j |= other_mask[p];
        acc += std::conj(amps_[i]) * other.amps_[j];
    }
    return acc;
}

void StateVector::rename(QubitId from, QubitId to)
{
    if (from == to) return;
    if (has(to)) throw QubitError("rename target label already in use");
    labels_[position(from)] = to;
}

cplx StateVector::amplitude(const std::vector<int>& bits) const
{
    if (bits.size() != labels_.size()) throw QubitError("bit count mismatch");
    std::size_t idx = 0;
    for (std::size_t p = 0; p < bits.size(); ++p)
        if (bits[p]) idx |= std::size_t(1) << p;
    return amps_[idx];
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol)
{
    return std::abs(a.inner(b)) >= 1.0 - tol;
}

}  // namespace blindpsi::qsim
