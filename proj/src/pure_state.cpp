#include "spinwit/pure_state.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace spinwit {

void SiteBlock::validate() const {
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i] < 0) throw std::invalid_argument("SiteBlock: negative site index");
        if (i > 0 && sites[i] <= sites[i - 1])
            throw std::invalid_argument("SiteBlock: sites must be strictly increasing");
    }
}

bool disjoint(const SiteBlock& a, const SiteBlock& b) {
    for (int s : a.sites)
        for (int t : b.sites)
            if (s == t) return false;
    return true;
}

PureState::PureState(std::vector<int> dims, Eigen::VectorXcd amplitudes, bool renormalize)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (dims_.empty()) throw std::invalid_argument("PureState: no subsystems");
    long total = 1;
    for (int d : dims_) {
        if (d < 2) throw std::invalid_argument("PureState: subsystem dimension must be >= 2");
        total *= d;
    }
    if (amps_.size() != total)
        throw std::invalid_argument("PureState: amplitude length does not match dims");
    strides_.assign(dims_.size(), 1);
    for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i)
        strides_[i] = strides_[i + 1] * dims_[i + 1];
    if (renormalize) {
        double n = amps_.norm();
        if (n < 1e-300) throw std::invalid_argument("PureState: cannot normalize zero vector");
        amps_ /= n;
    }
}

PureState PureState::basis(std::vector<int> dims, const std::vector<int>& levels) {
    if (levels.size() != dims.size())
        throw std::invalid_argument("PureState::basis: one level per site required");
    long total = 1;
    for (int d : dims) total *= d;
    long idx = 0, stride = total;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        stride /= dims[i];
        if (levels[i] < 0 || levels[i] >= dims[i])
            throw std::invalid_argument("PureState::basis: level out of range");
        idx += stride * levels[i];
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total);
    v[idx] = 1.0;
    return PureState(std::move(dims), std::move(v), false);
}

void PureState::check_block(const SiteBlock& block) const {
    if (block.sites.empty()) throw std::invalid_argument("block is empty");
    for (int s : block.sites)
        if (s >= sites()) throw std::invalid_argument("block site index out of range");
}

namespace {

enum class Ladder { lower, raise_ };

PureState apply_ladder(const PureState& state, const SiteBlock& block, Ladder which) {
    state.check_block(block);
    const Eigen::VectorXcd& in = state.amps();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (int s : block.sites) {
        const int d = state.dims()[s];
        const long st = state.stride(s);
        for (long idx = 0; idx < in.size(); ++idx) {
            if (in[idx] == cplx(0.0, 0.0)) continue;
            const int l = state.level_at(idx, s);
            if (which == Ladder::lower) {
                if (l > 0) out[idx - st] += std::sqrt(double(l) * double(d - l)) * in[idx];
            } else {
                if (l < d - 1) out[idx + st] += std::sqrt(double(l + 1) * double(d - 1 - l)) * in[idx];
            }
        }
    }
    return PureState(state.dims(), std::move(out), false);
}

}  // namespace

PureState apply_block_lowering(const PureState& state, const SiteBlock& block) {
    return apply_ladder(state, block, Ladder::lower);
}

PureState apply_block_raising(const PureState& state, const SiteBlock& block) {
    return apply_ladder(state, block, Ladder::raise_);
}

PureState apply_block_jz(const PureState& state, const SiteBlock& block) {
    state.check_block(block);
    const Eigen::VectorXcd& in = state.amps();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (int s : block.sites) {
        const double spin = 0.5 * (state.dims()[s] - 1);
        for (long idx = 0; idx < in.size(); ++idx) {
            if (in[idx] == cplx(0.0, 0.0)) continue;
            out[idx] += (state.level_at(idx, s) - spin) * in[idx];
        }
    }
    return PureState(state.dims(), std::move(out), false);
}

cplx inner(const PureState& x, const PureState& y) {
    if (x.dims() != y.dims()) throw std::invalid_argument("inner: dimension mismatch");
    return x.amps().dot(y.amps());  // Eigen dot conjugates the first argument
}

DensityMatrix reduced_density(const PureState& state, const SiteBlock& keep) {
    state.check_block(keep);
    long dim_keep = 1;
    for (int s : keep.sites) dim_keep *= state.dims()[s];
    const long dim_env = state.dim() / dim_keep;

    // keep-space strides (MSB-first over the kept sites, in block order)
    std::vector<long> kstride(keep.sites.size(), 1);
    for (int i = static_cast<int>(keep.sites.size()) - 2; i >= 0; --i)
        kstride[i] = kstride[i + 1] * state.dims()[keep.sites[i + 1]];

    std::vector<char> kept(state.sites(), 0);
    for (int s : keep.sites) kept[s] = 1;
    std::vector<int> env_sites;
    for (int s = 0; s < state.sites(); ++s)
        if (!kept[s]) env_sites.push_back(s);
    std::vector<long> estride(env_sites.size(), 1);
    for (int i = static_cast<int>(env_sites.size()) - 2; i >= 0; --i)
        estride[i] = estride[i + 1] * state.dims()[env_sites[i + 1]];

    Eigen::MatrixXcd slices = Eigen::MatrixXcd::Zero(dim_keep, std::max<long>(dim_env, 1));
    const Eigen::VectorXcd& in = state.amps();
    for (long idx = 0; idx < in.size(); ++idx) {
        long k = 0;
        for (std::size_t i = 0; i < keep.sites.size(); ++i)
            k += kstride[i] * state.level_at(idx, keep.sites[i]);
        long e = 0;
        for (std::size_t i = 0; i < env_sites.size(); ++i)
            e += estride[i] * state.level_at(idx, env_sites[i]);
        slices(k, e) = in[idx];
    }
    DensityMatrix dm;
    dm.m = slices * slices.adjoint();
    return dm;
}

double concurrence(const DensityMatrix& dm) {
    if (dm.dim() != 4) throw std::invalid_argument("concurrence: need a two-qubit density matrix");
    const Eigen::MatrixXcd& rho = dm.m;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("concurrence: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> psd(rho);
    if (psd.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("concurrence: matrix not positive semidefinite");

    Eigen::MatrixXcd yy = Eigen::MatrixXcd::Zero(4, 4);  // sigma_y (x) sigma_y
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    Eigen::MatrixXcd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(r, /*computeEigenvectors=*/false);
    std::vector<double> lam(4);
    for (int i = 0; i < 4; ++i) {
        double v = es.eigenvalues()[i].real();
        if (v < 0.0) {
            if (v < -1e-10) throw std::runtime_error("concurrence: eigenvalue below tolerance");
            v = 0.0;
        }
        lam[i] = std::sqrt(v);
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

namespace {

long block_dim(const PureState& state, const SiteBlock& block) {
    long d = 1;
    for (int s : block.sites) d *= state.dims()[s];
    return d;
}

// block-local MSB-first strides
std::vector<long> block_strides(const PureState& state, const SiteBlock& block) {
    std::vector<long> bs(block.sites.size(), 1);
    for (int i = static_cast<int>(block.sites.size()) - 2; i >= 0; --i)
        bs[i] = bs[i + 1] * state.dims()[block.sites[i + 1]];
    return bs;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double angle) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases[i] = std::exp(cplx(0.0, -angle * es.eigenvalues()[i]));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd block_raising_matrix(const PureState& state, const SiteBlock& block) {
    state.check_block(block);
    const long bd = block_dim(state, block);
    auto bs = block_strides(state, block);
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(bd, bd);
    for (std::size_t t = 0; t < block.sites.size(); ++t) {
        const int d = state.dims()[block.sites[t]];
        for (long bi = 0; bi < bd; ++bi) {
            const int l = static_cast<int>((bi / bs[t]) % d);
            if (l < d - 1)
                jp(bi + bs[t], bi) += std::sqrt(double(l + 1) * double(d - 1 - l));
        }
    }
    return jp;
}

Eigen::MatrixXcd block_jz_matrix(const PureState& state, const SiteBlock& block) {
    state.check_block(block);
    const long bd = block_dim(state, block);
    auto bs = block_strides(state, block);
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(bd, bd);
    for (std::size_t t = 0; t < block.sites.size(); ++t) {
        const int d = state.dims()[block.sites[t]];
        const double spin = 0.5 * (d - 1);
        for (long bi = 0; bi < bd; ++bi)
            jz(bi, bi) += (bi / bs[t]) % d - spin;
    }
    return jz;
}

PureState apply_block_operator(const PureState& state, const SiteBlock& block,
                               const Eigen::MatrixXcd& op) {
    state.check_block(block);
    const long bd = block_dim(state, block);
    if (op.rows() != bd || op.cols() != bd)
        throw std::invalid_argument("apply_block_operator: operator size mismatch");
    auto bs = block_strides(state, block);

    // full-space offset of each block-local index
    std::vector<long> offsets(bd, 0);
    for (long bi = 0; bi < bd; ++bi) {
        long off = 0;
        for (std::size_t t = 0; t < block.sites.size(); ++t) {
            const int d = state.dims()[block.sites[t]];
            off += ((bi / bs[t]) % d) * state.stride(block.sites[t]);
        }
        offsets[bi] = off;
    }

    const Eigen::VectorXcd& in = state.amps();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
    for (long idx = 0; idx < in.size(); ++idx) {
        if (in[idx] == cplx(0.0, 0.0)) continue;
        long bi = 0;
        for (std::size_t t = 0; t < block.sites.size(); ++t)
            bi += bs[t] * state.level_at(idx, block.sites[t]);
        const long base = idx - offsets[bi];
        for (long bj = 0; bj < bd; ++bj) {
            const cplx u = op(bj, bi);
            if (u != cplx(0.0, 0.0)) out[base + offsets[bj]] += u * in[idx];
        }
    }
    return PureState(state.dims(), std::move(out), false);
}

PureState rotate_block(const PureState& state, const SiteBlock& block, const EulerAngles& angles) {
    const Eigen::MatrixXcd jp = block_raising_matrix(state, block);
    const Eigen::MatrixXcd jm = jp.adjoint();
    const Eigen::MatrixXcd j1 = 0.5 * (jp + jm);
    const Eigen::MatrixXcd j2 = cplx(0.0, -0.5) * (jp - jm);
    const Eigen::MatrixXcd j3 = block_jz_matrix(state, block);
    const Eigen::MatrixXcd u = expm_hermitian(j1, angles.alpha) * expm_hermitian(j2, angles.beta) *
                               expm_hermitian(j3, angles.gamma);
    return apply_block_operator(state, block, u);
}

}  // namespace spinwit
