#include "hfbs/lpfbs.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace hfbs {

void WindowConfig::validate() const {
    if (m < 1) throw std::invalid_argument("WindowConfig: degree must be >= 1");
    if (l < 1) throw std::invalid_argument("WindowConfig: knot spacing l must be >= 1");
    if (n_up < 1 || n_up > n_c)
        throw std::invalid_argument("WindowConfig: need 1 <= n_up <= n_c");
    if (l_c != n_up * l)
        throw std::invalid_argument("WindowConfig: l_c must equal n_up*l "
                                    "(window advance consistency)");
    if (l_c < n_c)
        throw std::invalid_argument("WindowConfig: need l_c >= n_c");
    if (fir_len < 0)
        throw std::invalid_argument("WindowConfig: fir_len must be >= 1 (or 0 for auto)");
    if (!(svd_tol > 0.0))
        throw std::invalid_argument("WindowConfig: svd_tol must be positive");
}

namespace {

// Impulse response extended until the tail is negligible against the total
// absolute sum. Throws if it refuses to decay.
std::vector<double> converged_impulse(const DiscreteTransferFunction& tf,
                                      int min_len) {
    int len = std::max(1024, 2 * min_len);
    for (;;) {
        std::vector<double> h = impulse_response(tf, len);
        double total = 0.0, tail = 0.0;
        for (int i = 0; i < len; ++i) {
            total += std::abs(h[i]);
            if (i >= len / 2) tail += std::abs(h[i]);
        }
        if (total == 0.0 || tail <= 1e-12 * total) return h;
        if (len >= (1 << 22))
            throw std::runtime_error("truncate_impulse: impulse response does not "
                                     "decay (unstable filter?)");
        len *= 2;
    }
}

} // namespace

TruncatedImpulse truncate_impulse(const DiscreteTransferFunction& tf, int fir_len) {
    if (fir_len < 1)
        throw std::invalid_argument("truncate_impulse: fir_len must be >= 1");
    const std::vector<double> h = converged_impulse(tf, fir_len);
    TruncatedImpulse out;
    out.taps.assign(h.begin(), h.begin() + fir_len);
    double total = 0.0, tail = 0.0;
    for (size_t i = 0; i < h.size(); ++i) {
        total += std::abs(h[i]);
        if (i >= static_cast<size_t>(fir_len)) tail += std::abs(h[i]);
    }
    out.discarded_fraction = (total > 0.0) ? tail / total : 0.0;
    return out;
}

int default_fir_len(const DiscreteTransferFunction& tf, double tail_fraction) {
    if (!(tail_fraction > 0.0))
        throw std::invalid_argument("default_fir_len: tail fraction must be positive");
    const std::vector<double> h = converged_impulse(tf, 1);
    double total = 0.0;
    for (double v : h) total += std::abs(v);
    if (total == 0.0) return 1;
    double tail = total;
    for (size_t i = 0; i < h.size(); ++i) {
        if (tail <= tail_fraction * total) return std::max<int>(1, static_cast<int>(i));
        tail -= std::abs(h[i]);
    }
    return static_cast<int>(h.size());
}

namespace {

// B-spline bumps over the open-ended knot vector, tabulated at integer
// sample offsets. Interior bumps (j >= m) are one shifted prototype; the
// m clamped boundary bumps are tabulated individually.
struct OpenBasisTable {
    int m, L, span; // span = (m+1)*L samples of interior support

    std::vector<double> proto;
    std::vector<std::vector<double>> boundary;

    OpenBasisTable(int m_, int L_) : m(m_), L(L_), span((m_ + 1) * L_) {
        const KnotVector kv = build_open_knots(m, L, 1.0, 2 * m + 4);
        proto.resize(span);
        for (int k = 0; k < span; ++k)
            proto[k] = eval_basis(m, m, static_cast<double>(k), kv);
        boundary.resize(m);
        for (int j = 0; j < m; ++j) {
            boundary[j].resize((j + 1) * L);
            for (int k = 0; k < (j + 1) * L; ++k)
                boundary[j][k] = eval_basis(j, m, static_cast<double>(k), kv);
        }
    }

    double value(long j, long k) const {
        if (j >= m) {
            const long idx = k - (j - m) * L;
            return (idx >= 0 && idx < span) ? proto[idx] : 0.0;
        }
        if (j < 0 || k < 0 || k >= static_cast<long>(boundary[j].size())) return 0.0;
        return boundary[j][k];
    }
};

// The same bumps run through a truncated FIR.
struct FilteredTable {
    TruncatedImpulse fir;
    int m, L, span, flen;
    std::vector<double> fproto;
    std::vector<std::vector<double>> fboundary;

    FilteredTable(const DiscreteTransferFunction& tf, const OpenBasisTable& base,
                  int fir_len)
        : fir(truncate_impulse(tf, fir_len)), m(base.m), L(base.L), span(base.span),
          flen(fir_len) {
        fproto = convolve(base.proto);
        fboundary.resize(m);
        for (int j = 0; j < m; ++j) fboundary[j] = convolve(base.boundary[j]);
    }

    std::vector<double> convolve(const std::vector<double>& u) const {
        std::vector<double> out(u.size() + flen - 1, 0.0);
        for (size_t i = 0; i < u.size(); ++i)
            for (int t = 0; t < flen; ++t) out[i + t] += u[i] * fir.taps[t];
        return out;
    }

    bool zero() const {
        return std::all_of(fir.taps.begin(), fir.taps.end(),
                           [](double v) { return v == 0.0; });
    }

    double value(long j, long k) const {
        if (j >= m) {
            const long idx = k - (j - m) * L;
            return (idx >= 0 && idx < static_cast<long>(fproto.size())) ? fproto[idx]
                                                                        : 0.0;
        }
        if (j < 0 || k < 0 || k >= static_cast<long>(fboundary[j].size())) return 0.0;
        return fboundary[j][k];
    }

    Eigen::MatrixXd block(long first_col_coeff, long ncols, long r0, long nrows) const {
        Eigen::MatrixXd out(nrows, ncols);
        for (long q = 0; q < ncols; ++q)
            for (long r = 0; r < nrows; ++r)
                out(r, q) = value(first_col_coeff + q, r0 + r);
        return out;
    }
};

struct SolveOperator {
    Eigen::BDCSVD<Eigen::MatrixXd> svd;

    SolveOperator(const Eigen::MatrixXd& A, double tol)
        : svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV) {
        svd.setThreshold(tol);
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return svd.solve(rhs); }
};

// Batch geometry and commit/emit bookkeeping shared by both streams.
//
// Batch b starts with c = b*n_up committed coefficients. Its l_c new
// reference samples are rows [c*l, c*l + l_c); the least-squares fit
// additionally re-weighs the m*l seam samples delivered with the previous
// batch (rows from max(0, (c-m)*l)), without which commitment happens from
// the least-informed fit and the recursion diverges on resonant plants.
struct WindowState {
    WindowConfig cfg;
    OpenBasisTable table;
    long committed = 0;
    long pushed_real = 0;
    long emitted = 0;
    int solves = 0;
    bool partial_seen = false;
    bool finished = false;

    explicit WindowState(const WindowConfig& c) : cfg(c), table(c.m, c.l) {}

    long row_begin() const {
        return std::max<long>(0, (committed - cfg.m) * cfg.l);
    }
    long row_end() const { return committed * cfg.l + cfg.l_c; }

    long emit_cap() const {
        const long by_coeff = (committed - cfg.m) * cfg.l;
        return std::clamp<long>(by_coeff, 0, pushed_real);
    }

    // number of trailing committed coefficients whose truncated filtered
    // support can still reach the current fit window
    int past_cols(int fir_max) const {
        const int k = cfg.m + 1 + (fir_max + cfg.l - 2) / cfg.l;
        return static_cast<int>(std::min<long>(committed, k));
    }

    bool steady(int fir_max) const {
        return committed >= cfg.m + cfg.m + 1 + (fir_max + cfg.l - 2) / cfg.l;
    }

    void accept_batch(std::span<const double> refs, std::vector<double>& hist) {
        if (finished) throw std::logic_error("push_batch after finish");
        if (partial_seen)
            throw std::invalid_argument("push_batch: a partial batch must be final");
        if (refs.empty() || static_cast<int>(refs.size()) > cfg.l_c)
            throw std::invalid_argument("push_batch: batch must hold 1..l_c samples");
        if (static_cast<int>(refs.size()) < cfg.l_c) partial_seen = true;
        pushed_real += static_cast<long>(refs.size());
        hist.insert(hist.end(), refs.begin(), refs.end());
        hist.resize(row_end(), refs.back()); // ZOH-extend a partial final batch
    }

    Eigen::VectorXd rows_of(const std::vector<double>& hist) const {
        const long r0 = row_begin(), r1 = row_end();
        Eigen::VectorXd out(r1 - r0);
        for (long r = r0; r < r1; ++r) out[r - r0] = hist[r];
        return out;
    }

    std::vector<double> emit_range(const std::vector<double>& coeffs, long k0,
                                   long k1) const {
        std::vector<double> out;
        out.reserve(std::max<long>(0, k1 - k0));
        for (long k = k0; k < k1; ++k) {
            const long i = k / cfg.l;
            double v = 0.0;
            for (long j = i; j <= i + cfg.m; ++j)
                if (j < static_cast<long>(coeffs.size()))
                    v += coeffs[j] * table.value(j, k);
            out.push_back(v);
        }
        return out;
    }
};

Eigen::VectorXd past_slice(const std::vector<double>& coeffs, int npc) {
    Eigen::VectorXd out(npc);
    const size_t c = coeffs.size();
    for (int q = 0; q < npc; ++q) out[q] = coeffs[c - npc + q];
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// standard single-axis stream

struct LpfbsStandardStream::Impl {
    WindowState st;
    FilteredTable ftab;
    std::vector<double> hist;
    std::vector<double> coeffs;
    std::vector<double> last_tail; // uncommitted slots of the latest solve
    std::optional<SolveOperator> steady_op;
    Eigen::MatrixXd steady_npc;

    Impl(const DiscreteTransferFunction& tf, const WindowConfig& cfg)
        : st(cfg), ftab(tf, st.table,
                        cfg.fir_len > 0 ? cfg.fir_len : default_fir_len(tf)) {}

    void solve_batch() {
        const long c = st.committed;
        const long r0 = st.row_begin(), nrows = st.row_end() - r0;
        const int npc = st.past_cols(ftab.flen);
        const bool steady = st.steady(ftab.flen);

        Eigen::VectorXd rhs = st.rows_of(hist);
        if (npc > 0) {
            const Eigen::VectorXd pP = past_slice(coeffs, npc);
            if (steady && steady_op)
                rhs -= steady_npc * pP;
            else
                rhs -= ftab.block(c - npc, npc, r0, nrows) * pP;
        }

        Eigen::VectorXd pC;
        if (steady) {
            if (!steady_op) {
                steady_op.emplace(ftab.block(c, st.cfg.n_c, r0, nrows), st.cfg.svd_tol);
                steady_npc = ftab.block(c - npc, npc, r0, nrows);
            }
            pC = steady_op->solve(rhs);
        } else {
            pC = SolveOperator(ftab.block(c, st.cfg.n_c, r0, nrows), st.cfg.svd_tol)
                     .solve(rhs);
        }
        for (int i = 0; i < st.cfg.n_up; ++i) coeffs.push_back(pC[i]);
        last_tail.assign(pC.data() + st.cfg.n_up, pC.data() + st.cfg.n_c);
        st.committed = static_cast<long>(coeffs.size());
        ++st.solves;
    }

    std::vector<double> drain() {
        const long cap = st.emit_cap();
        auto out = st.emit_range(coeffs, st.emitted, cap);
        st.emitted = cap;
        return out;
    }
};

LpfbsStandardStream::LpfbsStandardStream(const DiscreteTransferFunction& tf,
                                         const WindowConfig& cfg) {
    cfg.validate();
    impl_ = std::make_unique<Impl>(tf, cfg);
}
LpfbsStandardStream::~LpfbsStandardStream() = default;
LpfbsStandardStream::LpfbsStandardStream(LpfbsStandardStream&&) noexcept = default;

std::vector<double> LpfbsStandardStream::push_batch(std::span<const double> refs) {
    impl_->st.accept_batch(refs, impl_->hist);
    impl_->solve_batch();
    return impl_->drain();
}

std::vector<double> LpfbsStandardStream::finish() {
    auto& st = impl_->st;
    if (st.finished) throw std::logic_error("finish called twice");
    st.finished = true;
    if (st.pushed_real == 0) return {};
    const int tail = st.cfg.n_c - st.cfg.n_up;
    // hold the last reference until the committed prefix covers every
    // pushed sample, then commit the final lookahead slots
    while ((st.committed + st.cfg.n_up + tail - st.cfg.m) * st.cfg.l < st.pushed_real) {
        impl_->hist.resize(st.row_end() + st.cfg.l_c, impl_->hist.back());
        impl_->solve_batch();
    }
    if ((st.committed - st.cfg.m) * st.cfg.l < st.pushed_real) {
        if ((st.committed + tail - st.cfg.m) * st.cfg.l < st.pushed_real) {
            impl_->hist.resize(st.row_end() + st.cfg.l_c, impl_->hist.back());
            impl_->solve_batch();
        }
        impl_->coeffs.insert(impl_->coeffs.end(), impl_->last_tail.begin(),
                             impl_->last_tail.end());
        st.committed = static_cast<long>(impl_->coeffs.size());
    }
    return impl_->drain();
}

int LpfbsStandardStream::batches_solved() const { return impl_->st.solves; }
long LpfbsStandardStream::samples_pushed() const { return impl_->st.pushed_real; }
bool LpfbsStandardStream::saw_partial_batch() const { return impl_->st.partial_seen; }
const TruncatedImpulse& LpfbsStandardStream::fir() const { return impl_->ftab.fir; }

// ---------------------------------------------------------------------------
// coupled / decoupled racking stream

struct LpvLpfbsStream::Impl {
    WindowState st;
    FilteredTable fx, fy, ft;
    bool coupled;
    bool racking_zero;
    int fir_max;
    std::vector<double> hist_x, hist_y;
    std::vector<double> px, py;
    std::vector<double> tail_x, tail_y;
    std::optional<SolveOperator> op_x, op_y;
    Eigen::MatrixXd ss_nxc, ss_nxpc, ss_nyc, ss_nypc, ss_ntc, ss_ntpc;

    Impl(const HFramePlant& plant, const WindowConfig& cfg, bool coupled_)
        : st(cfg),
          fx(plant.gxx, st.table,
             cfg.fir_len > 0 ? cfg.fir_len : default_fir_len(plant.gxx)),
          fy(plant.gyy, st.table,
             cfg.fir_len > 0 ? cfg.fir_len : default_fir_len(plant.gyy)),
          ft(plant.gxtheta, st.table,
             cfg.fir_len > 0 ? cfg.fir_len : default_fir_len(plant.gxtheta)),
          coupled(coupled_), racking_zero(ft.zero()),
          fir_max(std::max({fx.flen, fy.flen, ft.flen})) {}

    void solve_batch() {
        const long c = st.committed;
        const long r0 = st.row_begin(), nrows = st.row_end() - r0;
        const int npc = st.past_cols(fir_max);
        const int nc = st.cfg.n_c;
        const bool steady = st.steady(fir_max);

        const Eigen::MatrixXd *nxc, *nxpc, *nyc, *nypc, *ntc, *ntpc;
        Eigen::MatrixXd f_nxc, f_nxpc, f_nyc, f_nypc, f_ntc, f_ntpc;
        if (steady && op_x) {
            nxc = &ss_nxc; nxpc = &ss_nxpc; nyc = &ss_nyc;
            nypc = &ss_nypc; ntc = &ss_ntc; ntpc = &ss_ntpc;
        } else {
            f_nxc = fx.block(c, nc, r0, nrows);
            f_nxpc = fx.block(c - npc, npc, r0, nrows);
            f_nyc = fy.block(c, nc, r0, nrows);
            f_nypc = fy.block(c - npc, npc, r0, nrows);
            f_ntc = ft.block(c, nc, r0, nrows);
            f_ntpc = ft.block(c - npc, npc, r0, nrows);
            if (steady) {
                ss_nxc = f_nxc; ss_nxpc = f_nxpc; ss_nyc = f_nyc;
                ss_nypc = f_nypc; ss_ntc = f_ntc; ss_ntpc = f_ntpc;
                op_x.emplace(ss_nxc, st.cfg.svd_tol);
                op_y.emplace(ss_nyc, st.cfg.svd_tol);
                nxc = &ss_nxc; nxpc = &ss_nxpc; nyc = &ss_nyc;
                nypc = &ss_nypc; ntc = &ss_ntc; ntpc = &ss_ntpc;
            } else {
                nxc = &f_nxc; nxpc = &f_nxpc; nyc = &f_nyc;
                nypc = &f_nypc; ntc = &f_ntc; ntpc = &f_ntpc;
            }
        }

        const Eigen::VectorXd pxP = past_slice(px, npc);
        const Eigen::VectorXd pyP = past_slice(py, npc);
        Eigen::VectorXd rx = st.rows_of(hist_x);
        Eigen::VectorXd ry = st.rows_of(hist_y);
        const Eigen::VectorXd d = rx; // scheduling parameter: x reference rows
        if (npc > 0) {
            rx -= *nxpc * pxP;
            ry -= *nypc * pyP;
        }

        Eigen::VectorXd pxC, pyC;
        if (racking_zero || !coupled) {
            // sequential: x first, then y with racking contributions of both
            // past and current x coefficients as known inputs
            pxC = solve_axis(*nxc, rx, op_x, steady, st.cfg.svd_tol);
            if (!racking_zero) {
                Eigen::VectorXd theta = *ntc * pxC;
                if (npc > 0) theta += *ntpc * pxP;
                ry -= d.cwiseProduct(theta);
            }
            pyC = solve_axis(*nyc, ry, op_y, steady, st.cfg.svd_tol);
        } else {
            // stacked two-axis solve; the diag(xd) weighting makes the
            // operator batch-dependent, so there is nothing to pre-invert
            if (npc > 0) ry -= d.cwiseProduct((*ntpc * pxP).eval());
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * nrows, 2 * nc);
            A.topLeftCorner(nrows, nc) = *nxc;
            A.bottomLeftCorner(nrows, nc) = d.asDiagonal() * (*ntc);
            A.bottomRightCorner(nrows, nc) = *nyc;
            Eigen::VectorXd rhs(2 * nrows);
            rhs << rx, ry;
            const Eigen::VectorXd sol = SolveOperator(A, st.cfg.svd_tol).solve(rhs);
            pxC = sol.head(nc);
            pyC = sol.tail(nc);
        }

        for (int i = 0; i < st.cfg.n_up; ++i) {
            px.push_back(pxC[i]);
            py.push_back(pyC[i]);
        }
        tail_x.assign(pxC.data() + st.cfg.n_up, pxC.data() + nc);
        tail_y.assign(pyC.data() + st.cfg.n_up, pyC.data() + nc);
        st.committed = static_cast<long>(px.size());
        ++st.solves;
    }

    static Eigen::VectorXd solve_axis(const Eigen::MatrixXd& A,
                                      const Eigen::VectorXd& rhs,
                                      std::optional<SolveOperator>& op, bool steady,
                                      double tol) {
        if (steady && op) return op->solve(rhs);
        return SolveOperator(A, tol).solve(rhs);
    }

    Chunk drain() {
        const long cap = st.emit_cap();
        Chunk out{st.emit_range(px, st.emitted, cap), st.emit_range(py, st.emitted, cap)};
        st.emitted = cap;
        return out;
    }
};

LpvLpfbsStream::LpvLpfbsStream(const HFramePlant& plant, const WindowConfig& cfg,
                               bool coupled) {
    cfg.validate();
    impl_ = std::make_unique<Impl>(plant, cfg, coupled);
}
LpvLpfbsStream::~LpvLpfbsStream() = default;
LpvLpfbsStream::LpvLpfbsStream(LpvLpfbsStream&&) noexcept = default;

LpvLpfbsStream::Chunk LpvLpfbsStream::push_batch(std::span<const double> xd,
                                                 std::span<const double> yd) {
    if (xd.size() != yd.size())
        throw std::invalid_argument("push_batch: axis batches must be in lockstep");
    auto& st = impl_->st;
    st.accept_batch(xd, impl_->hist_x);
    impl_->hist_y.insert(impl_->hist_y.end(), yd.begin(), yd.end());
    impl_->hist_y.resize(impl_->hist_x.size(), yd.back());
    impl_->solve_batch();
    return impl_->drain();
}

LpvLpfbsStream::Chunk LpvLpfbsStream::finish() {
    auto& st = impl_->st;
    if (st.finished) throw std::logic_error("finish called twice");
    st.finished = true;
    if (st.pushed_real == 0) return {};
    const int tail = st.cfg.n_c - st.cfg.n_up;
    auto grow = [&] {
        impl_->hist_x.resize(st.row_end() + st.cfg.l_c, impl_->hist_x.back());
        impl_->hist_y.resize(st.row_end() + st.cfg.l_c, impl_->hist_y.back());
        impl_->solve_batch();
    };
    while ((st.committed + st.cfg.n_up + tail - st.cfg.m) * st.cfg.l < st.pushed_real)
        grow();
    if ((st.committed - st.cfg.m) * st.cfg.l < st.pushed_real) {
        if ((st.committed + tail - st.cfg.m) * st.cfg.l < st.pushed_real) grow();
        impl_->px.insert(impl_->px.end(), impl_->tail_x.begin(), impl_->tail_x.end());
        impl_->py.insert(impl_->py.end(), impl_->tail_y.begin(), impl_->tail_y.end());
        st.committed = static_cast<long>(impl_->px.size());
    }
    return impl_->drain();
}

int LpvLpfbsStream::batches_solved() const { return impl_->st.solves; }
long LpvLpfbsStream::samples_pushed() const { return impl_->st.pushed_real; }
const TruncatedImpulse& LpvLpfbsStream::fir_xx() const { return impl_->fx.fir; }
const TruncatedImpulse& LpvLpfbsStream::fir_yy() const { return impl_->fy.fir; }
const TruncatedImpulse& LpvLpfbsStream::fir_xtheta() const { return impl_->ft.fir; }

// ---------------------------------------------------------------------------
// whole-signal drivers

namespace {

template <typename Push, typename Finish>
void drive_batches(Eigen::Index total, int l_c, Push push, Finish fin) {
    for (Eigen::Index k = 0; k < total; k += l_c)
        push(k, std::min<Eigen::Index>(l_c, total - k));
    fin();
}

} // namespace

LpfbsRunResult lpfbs_standard(const DiscreteTransferFunction& tf,
                              const Eigen::Ref<const Eigen::VectorXd>& ref,
                              const WindowConfig& cfg) {
    LpfbsStandardStream stream(tf, cfg);
    std::vector<double> cmd;
    cmd.reserve(ref.size());
    drive_batches(
        ref.size(), cfg.l_c,
        [&](Eigen::Index k, Eigen::Index len) {
            auto chunk = stream.push_batch({ref.data() + k, static_cast<size_t>(len)});
            cmd.insert(cmd.end(), chunk.begin(), chunk.end());
        },
        [&] {
            auto chunk = stream.finish();
            cmd.insert(cmd.end(), chunk.begin(), chunk.end());
        });
    LpfbsRunResult r;
    r.command = Eigen::Map<Eigen::VectorXd>(cmd.data(), cmd.size());
    r.batches_solved = stream.batches_solved();
    return r;
}

namespace {

LpvLpfbsRunResult run_lpv(const HFramePlant& plant,
                          const Eigen::Ref<const Eigen::VectorXd>& xd,
                          const Eigen::Ref<const Eigen::VectorXd>& yd,
                          const WindowConfig& cfg, bool coupled) {
    if (xd.size() != yd.size())
        throw std::invalid_argument("lpfbs: axis references must have equal length");
    LpvLpfbsStream stream(plant, cfg, coupled);
    std::vector<double> cx, cy;
    drive_batches(
        xd.size(), cfg.l_c,
        [&](Eigen::Index k, Eigen::Index len) {
            auto chunk = stream.push_batch({xd.data() + k, static_cast<size_t>(len)},
                                           {yd.data() + k, static_cast<size_t>(len)});
            cx.insert(cx.end(), chunk.xdm.begin(), chunk.xdm.end());
            cy.insert(cy.end(), chunk.ydm.begin(), chunk.ydm.end());
        },
        [&] {
            auto chunk = stream.finish();
            cx.insert(cx.end(), chunk.xdm.begin(), chunk.xdm.end());
            cy.insert(cy.end(), chunk.ydm.begin(), chunk.ydm.end());
        });
    LpvLpfbsRunResult r;
    r.xdm = Eigen::Map<Eigen::VectorXd>(cx.data(), cx.size());
    r.ydm = Eigen::Map<Eigen::VectorXd>(cy.data(), cy.size());
    r.batches_solved = stream.batches_solved();
    return r;
}

} // namespace

LpvLpfbsRunResult lpfbs_coupled(const HFramePlant& plant,
                                const Eigen::Ref<const Eigen::VectorXd>& xd,
                                const Eigen::Ref<const Eigen::VectorXd>& yd,
                                const WindowConfig& cfg) {
    return run_lpv(plant, xd, yd, cfg, /*coupled=*/true);
}

LpvLpfbsRunResult lpfbs_decoupled(const HFramePlant& plant,
                                  const Eigen::Ref<const Eigen::VectorXd>& xd,
                                  const Eigen::Ref<const Eigen::VectorXd>& yd,
                                  const WindowConfig& cfg) {
    return run_lpv(plant, xd, yd, cfg, /*coupled=*/false);
}

} // namespace hfbs
