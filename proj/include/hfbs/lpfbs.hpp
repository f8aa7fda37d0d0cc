#pragma once

#include <Eigen/Core>
#include <memory>
#include <span>
#include <vector>

#include "hfbs/fbs.hpp"
#include "hfbs/sysmodel.hpp"

namespace hfbs {

/// Limited-preview window geometry. Each batch delivers n_up*l new
/// reference samples (= l_c), solves n_c coefficient slots over the batch
/// window, commits the oldest n_up of them and advances by n_up*l samples.
struct WindowConfig {
    int n_up = 11;  // coefficients committed per batch
    int n_c = 22;   // coefficient slots in the current batch
    int l_c = 220;  // trajectory points per batch, must equal n_up*l
    int l = 20;     // knot spacing in samples
    int m = 5;      // B-spline degree
    int fir_len = 0; // truncated impulse-response length; 0 picks the
                     // smallest length with discarded tail fraction < 1e-4
    double svd_tol = kDefaultSvdTol;

    void validate() const; // throws std::invalid_argument on bad geometry
};

struct TruncatedImpulse {
    std::vector<double> taps;
    double discarded_fraction = 0.0; // |tail| sum over |full response| sum
};

/// First fir_len impulse-response samples plus the discarded tail's share
/// of the total absolute sum. Requires a stable filter for the tail sum to
/// converge.
TruncatedImpulse truncate_impulse(const DiscreteTransferFunction& tf, int fir_len);

/// Smallest FIR length whose discarded tail fraction is below tail_fraction.
int default_fir_len(const DiscreteTransferFunction& tf, double tail_fraction = 1e-4);

/// Streaming single-axis limited-preview FBS. References arrive in batches
/// of l_c samples; command samples are returned as they become final.
/// One stream is owned by one logical thread of execution.
class LpfbsStandardStream {
public:
    LpfbsStandardStream(const DiscreteTransferFunction& tf, const WindowConfig& cfg);
    ~LpfbsStandardStream();
    LpfbsStandardStream(LpfbsStandardStream&&) noexcept;

    /// Feed the next batch. A batch shorter than l_c is accepted once
    /// (the final one), zero-order-hold extended and flagged; pushing after
    /// it throws. Returns newly final command samples.
    std::vector<double> push_batch(std::span<const double> refs);

    /// Hold the last reference until every pushed sample has a final
    /// command; returns the remaining samples. Total output across
    /// push_batch and finish equals the total pushed samples.
    std::vector<double> finish();

    int batches_solved() const;
    long samples_pushed() const;
    bool saw_partial_batch() const;
    const TruncatedImpulse& fir() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Streaming limited-preview FBS with racking compensation, coupled
/// (stacked two-axis solve per batch) or decoupled (x then y, racking
/// contributions of both past and current x coefficients subtracted).
/// An identically zero racking FIR makes both variants dispatch to the
/// per-axis standard solves, so they collapse to LpfbsStandardStream
/// output bit for bit.
class LpvLpfbsStream {
public:
    LpvLpfbsStream(const HFramePlant& plant, const WindowConfig& cfg, bool coupled);
    ~LpvLpfbsStream();
    LpvLpfbsStream(LpvLpfbsStream&&) noexcept;

    struct Chunk {
        std::vector<double> xdm;
        std::vector<double> ydm;
    };

    Chunk push_batch(std::span<const double> xd, std::span<const double> yd);
    Chunk finish();

    int batches_solved() const;
    long samples_pushed() const;
    const TruncatedImpulse& fir_xx() const;
    const TruncatedImpulse& fir_yy() const;
    const TruncatedImpulse& fir_xtheta() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct LpfbsRunResult {
    Eigen::VectorXd command;
    int batches_solved = 0;
};

struct LpvLpfbsRunResult {
    Eigen::VectorXd xdm;
    Eigen::VectorXd ydm;
    int batches_solved = 0;
};

/// Whole-signal drivers over the streaming classes.
LpfbsRunResult lpfbs_standard(const DiscreteTransferFunction& tf,
                              const Eigen::Ref<const Eigen::VectorXd>& ref,
                              const WindowConfig& cfg);
LpvLpfbsRunResult lpfbs_coupled(const HFramePlant& plant,
                                const Eigen::Ref<const Eigen::VectorXd>& xd,
                                const Eigen::Ref<const Eigen::VectorXd>& yd,
                                const WindowConfig& cfg);
LpvLpfbsRunResult lpfbs_decoupled(const HFramePlant& plant,
                                  const Eigen::Ref<const Eigen::VectorXd>& xd,
                                  const Eigen::Ref<const Eigen::VectorXd>& yd,
                                  const WindowConfig& cfg);

} // namespace hfbs
