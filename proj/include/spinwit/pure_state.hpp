#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace spinwit {

using cplx = std::complex<double>;

// Ordered set of subsystem indices acted on by one collective spin.
struct SiteBlock {
    std::vector<int> sites;

    SiteBlock() = default;
    SiteBlock(std::initializer_list<int> s) : sites(s) { validate(); }
    explicit SiteBlock(std::vector<int> s) : sites(std::move(s)) { validate(); }

    int size() const { return static_cast<int>(sites.size()); }

  private:
    void validate() const;  // strictly increasing, non-negative
};

bool disjoint(const SiteBlock& a, const SiteBlock& b);

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct DensityMatrix {
    Eigen::MatrixXcd m;
    Eigen::Index dim() const { return m.rows(); }
};

// Dense state vector over a product of finite-dimensional subsystems.
// Site 0 owns the slowest-varying index. Per-site basis level l = 0..d-1
// encodes the spin projection m = l - s with s = (d-1)/2, so level 0 is
// spin-down and raising moves l upward.
class PureState {
  public:
    PureState(std::vector<int> dims, Eigen::VectorXcd amplitudes, bool renormalize = true);

    // |levels[0], levels[1], ...> product basis state
    static PureState basis(std::vector<int> dims, const std::vector<int>& levels);

    const std::vector<int>& dims() const { return dims_; }
    const Eigen::VectorXcd& amps() const { return amps_; }
    Eigen::VectorXcd& amps() { return amps_; }

    int sites() const { return static_cast<int>(dims_.size()); }
    long dim() const { return static_cast<long>(amps_.size()); }
    long stride(int site) const { return strides_[site]; }
    int level_at(long index, int site) const {
        return static_cast<int>((index / strides_[site]) % dims_[site]);
    }

    double norm() const { return amps_.norm(); }
    PureState normalized() const { return PureState(dims_, amps_, true); }

    void check_block(const SiteBlock& block) const;

  private:
    std::vector<int> dims_;
    std::vector<long> strides_;
    Eigen::VectorXcd amps_;
};

// Collective ladder/z operators summed over the block's sites. Results are
// unnormalized (linear operator application).
PureState apply_block_lowering(const PureState& state, const SiteBlock& block);
PureState apply_block_raising(const PureState& state, const SiteBlock& block);
PureState apply_block_jz(const PureState& state, const SiteBlock& block);

// <x|y>, conjugate-linear in x.
cplx inner(const PureState& x, const PureState& y);

// Partial trace onto the kept sites (in their given order).
DensityMatrix reduced_density(const PureState& state, const SiteBlock& keep);

// Two-qubit Wootters concurrence of a 4x4 density matrix.
double concurrence(const DensityMatrix& dm);

// Apply an arbitrary matrix acting on the block's joint space (dimension =
// product of the block's site dimensions, block-local MSB-first ordering).
PureState apply_block_operator(const PureState& state, const SiteBlock& block,
                               const Eigen::MatrixXcd& op);

// Collective generators on the block's joint space: J+, J-, J1, J2, J3.
Eigen::MatrixXcd block_raising_matrix(const PureState& state, const SiteBlock& block);
Eigen::MatrixXcd block_jz_matrix(const PureState& state, const SiteBlock& block);

// R = exp(-i alpha J1) exp(-i beta J2) exp(-i gamma J3) on the block.
PureState rotate_block(const PureState& state, const SiteBlock& block, const EulerAngles& angles);

}  // namespace spinwit
