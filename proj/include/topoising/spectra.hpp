// Copyright 2026 The topoising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact diagonalization of Pauli-sum Hamiltonians in the computational basis.
// Basis index b has bit k equal to the Z eigenvalue bit of qubit k (site 0 is
// the least significant bit). X^x Z^z |b> = (-1)^{|z & b|} |b ^ x>.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "topoising/errors.hpp"
#include "topoising/hamiltonians.hpp"
#include "topoising/mapping.hpp"
#include "topoising/pauli_gf2.hpp"

namespace topoising {

// ---------------------------------------------------------------------------
// Thread budget

namespace detail {
inline std::atomic<unsigned> &thread_budget() {
    static std::atomic<unsigned> budget{[] {
        if (const char *env = std::getenv("TOPOISING_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        }
        return 1U;
    }()};
    return budget;
}
}  // namespace detail

/// Caps the worker threads used by matvec. Zero means hardware concurrency.
inline void set_max_threads(unsigned n) {
    detail::thread_budget() = n == 0 ? std::max(1U, std::thread::hardware_concurrency()) : n;
}
inline unsigned max_threads() { return detail::thread_budget(); }

// ---------------------------------------------------------------------------
// Bases and compiled operators

constexpr std::size_t kMaxQubits = 30;

/// Either the full 2^n space or a list of computational basis states.
class Basis {
   public:
    static Basis full(std::size_t n) {
        check_qubits(n);
        Basis b;
        b.n_ = n;
        b.full_dim_ = std::uint64_t{1} << n;
        return b;
    }

    static Basis subset(std::size_t n, std::vector<std::uint64_t> states) {
        check_qubits(n);
        Basis b;
        b.n_ = n;
        b.full_dim_ = std::uint64_t{1} << n;
        b.lookup_.assign(b.full_dim_, -1);
        for (std::size_t c = 0; c < states.size(); ++c) {
            b.lookup_[states[c]] = static_cast<std::int64_t>(c);
        }
        b.states_ = std::move(states);
        b.is_full_ = false;
        return b;
    }

    std::size_t num_qubits() const { return n_; }
    std::uint64_t full_dim() const { return full_dim_; }
    std::size_t dim() const { return is_full_ ? static_cast<std::size_t>(full_dim_) : states_.size(); }
    bool is_full() const { return is_full_; }
    std::uint64_t state(std::size_t c) const { return is_full_ ? c : states_[c]; }
    std::int64_t index_of(std::uint64_t b) const { return is_full_ ? static_cast<std::int64_t>(b) : lookup_[b]; }

    std::vector<double> embed(std::span<const double> compressed) const {
        if (is_full_) {
            return {compressed.begin(), compressed.end()};
        }
        std::vector<double> out(full_dim_, 0.0);
        for (std::size_t c = 0; c < states_.size(); ++c) {
            out[states_[c]] = compressed[c];
        }
        return out;
    }

   private:
    static void check_qubits(std::size_t n) {
        if (n > kMaxQubits) {
            throw std::invalid_argument("exact diagonalization supports at most " + std::to_string(kMaxQubits) +
                                        " qubits, got " + std::to_string(n));
        }
    }

    std::size_t n_ = 0;
    std::uint64_t full_dim_ = 1;
    bool is_full_ = true;
    std::vector<std::uint64_t> states_;
    std::vector<std::int64_t> lookup_;
};

inline std::uint64_t low_mask(const BitVector &v) {
    if (v.size() > 64) {
        throw std::invalid_argument("operator too wide for a 64-bit mask");
    }
    return v.low_word();
}

inline bool odd_parity(std::uint64_t x) { return (std::popcount(x) & 1) != 0; }

/// Matrix-free form of a HamiltonianTerms list on a basis: a diagonal plus
/// off-diagonal groups sharing one X mask.
class CompiledOperator {
   public:
    CompiledOperator(const HamiltonianTerms &h, const Basis &basis) : basis_(&basis) {
        if (h.num_qubits() != basis.num_qubits()) {
            throw std::invalid_argument("Hamiltonian and basis qubit counts differ");
        }
        std::vector<std::pair<std::uint64_t, double>> diagonal_terms;
        std::map<std::uint64_t, std::size_t> group_of;
        for (const auto &t : h.terms()) {
            std::uint64_t x = low_mask(t.op.x());
            std::uint64_t z = low_mask(t.op.z());
            if (x == 0) {
                diagonal_terms.emplace_back(z, t.coeff);
                continue;
            }
            auto it = group_of.find(x);
            if (it == group_of.end()) {
                it = group_of.emplace(x, groups_.size()).first;
                groups_.push_back({x, {}});
            }
            groups_[it->second].terms.push_back({z, t.coeff});
        }
        diag_.resize(basis.dim());
        for (std::size_t c = 0; c < basis.dim(); ++c) {
            std::uint64_t b = basis.state(c);
            double d = 0.0;
            for (const auto &[z, coeff] : diagonal_terms) {
                d += odd_parity(z & b) ? -coeff : coeff;
            }
            diag_[c] = d;
        }
    }

    std::size_t dim() const { return basis_->dim(); }
    const Basis &basis() const { return *basis_; }
    const std::vector<double> &diagonal() const { return diag_; }

    /// out = H in, both in the compressed coordinates of the basis.
    void apply(const double *in, double *out) const {
        const std::size_t n = dim();
        unsigned workers = std::max(1U, std::min<unsigned>(max_threads(), static_cast<unsigned>(n / 4096 + 1)));
        if (workers == 1) {
            apply_range(in, out, 0, n);
            return;
        }
        std::vector<std::jthread> pool;
        std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk;
            std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) {
                pool.emplace_back([=, this] { apply_range(in, out, lo, hi); });
            }
        }
    }

    /// Dense matrix in basis coordinates.
    Eigen::MatrixXd dense() const {
        const std::size_t n = dim();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t c = 0; c < n; ++c) {
            auto col = static_cast<Eigen::Index>(c);
            m(col, col) += diag_[c];
            std::uint64_t b = basis_->state(c);
            for (const auto &g : groups_) {
                std::int64_t r = basis_->index_of(b ^ g.x);
                if (r < 0) {
                    continue;
                }
                // Column c holds H|b>; X^x Z^z |b> = (-1)^{|z & b|} |b ^ x>.
                double v = 0.0;
                for (const auto &t : g.terms) {
                    v += odd_parity(t.z & b) ? -t.coeff : t.coeff;
                }
                m(static_cast<Eigen::Index>(r), col) += v;
            }
        }
        return m;
    }

   private:
    struct GroupTerm {
        std::uint64_t z;
        double coeff;
    };
    struct Group {
        std::uint64_t x;
        std::vector<GroupTerm> terms;
    };

    void apply_range(const double *in, double *out, std::size_t lo, std::size_t hi) const {
        for (std::size_t c = lo; c < hi; ++c) {
            std::uint64_t b = basis_->state(c);
            double acc = diag_[c] * in[c];
            for (const auto &g : groups_) {
                std::uint64_t src = b ^ g.x;
                std::int64_t s = basis_->index_of(src);
                if (s < 0) {
                    continue;
                }
                // Pull form: <b| X^x Z^z |src> = (-1)^{|z & src|}.
                double v = 0.0;
                for (const auto &t : g.terms) {
                    v += odd_parity(t.z & src) ? -t.coeff : t.coeff;
                }
                acc += v * in[static_cast<std::size_t>(s)];
            }
            out[c] = acc;
        }
    }

    const Basis *basis_;
    std::vector<double> diag_;
    std::vector<Group> groups_;
};

/// H applied to a full-space state vector of length 2^n.
inline std::vector<double> matvec(const HamiltonianTerms &h, std::span<const double> state) {
    Basis basis = Basis::full(h.num_qubits());
    if (state.size() != basis.dim()) {
        throw std::invalid_argument("state has length " + std::to_string(state.size()) + ", expected " +
                                    std::to_string(basis.dim()));
    }
    CompiledOperator op(h, basis);
    std::vector<double> out(state.size());
    op.apply(state.data(), out.data());
    return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

/// <v|H|v> / <v|v> for a full-space vector.
inline double rayleigh_quotient(const HamiltonianTerms &h, std::span<const double> v) {
    auto hv = matvec(h, v);
    return dot(v, hv) / dot(v, v);
}

// ---------------------------------------------------------------------------
// Sectors

/// Restricts to the eigenvalue (+1 or -1) subspace of a Pauli operator.
struct SectorProjector {
    PauliString op;
    int eigenvalue = 1;
};

/// Applies prod_k (1 + s_k P_k) / 2 in place on a full-space vector.
inline void project_full(std::span<const SectorProjector> sector, std::vector<double> &v) {
    std::vector<double> pv(v.size());
    for (const auto &proj : sector) {
        std::uint64_t x = low_mask(proj.op.x());
        std::uint64_t z = low_mask(proj.op.z());
        double s = static_cast<double>(proj.eigenvalue * proj.op.sign());
        for (std::uint64_t b = 0; b < v.size(); ++b) {
            pv[b ^ x] = odd_parity(z & b) ? -v[b] : v[b];
        }
        for (std::size_t b = 0; b < v.size(); ++b) {
            v[b] = 0.5 * (v[b] + s * pv[b]);
        }
    }
}

inline bool all_diagonal(std::span<const SectorProjector> sector) {
    return std::all_of(sector.begin(), sector.end(), [](const auto &p) { return p.op.x().none(); });
}

/// Basis states satisfying every (diagonal) sector condition.
inline Basis sector_basis(std::size_t n, std::span<const SectorProjector> sector) {
    if (sector.empty()) {
        return Basis::full(n);
    }
    std::vector<std::pair<std::uint64_t, bool>> checks;  // z mask, required odd parity
    for (const auto &p : sector) {
        if (!p.op.x().none()) {
            throw std::invalid_argument("sector_basis needs diagonal (Z-type) projectors");
        }
        int target = p.eigenvalue * p.op.sign();
        checks.emplace_back(low_mask(p.op.z()), target < 0);
    }
    std::vector<std::uint64_t> states;
    const std::uint64_t full = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < full; ++b) {
        bool ok = true;
        for (const auto &[z, odd] : checks) {
            if (odd_parity(z & b) != odd) {
                ok = false;
                break;
            }
        }
        if (ok) {
            states.push_back(b);
        }
    }
    return Basis::subset(n, std::move(states));
}

// ---------------------------------------------------------------------------
// Eigensolvers

enum class EigenMethod { dense, iterative, automatic };

inline std::string_view to_string(EigenMethod m) {
    switch (m) {
        case EigenMethod::dense:
            return "dense";
        case EigenMethod::iterative:
            return "iterative";
        case EigenMethod::automatic:
            return "auto";
    }
    return "?";
}

constexpr std::size_t kDenseAutoLimit = 512;
constexpr std::size_t kDenseHardLimit = std::size_t{1} << 14;

struct SpectrumRequest {
    HamiltonianTerms hamiltonian;
    std::size_t num_eigenvalues = 1;
    std::vector<SectorProjector> sector{};
    EigenMethod method = EigenMethod::automatic;
    bool compute_vectors = false;
    double tolerance = 1e-8;   // residual norm relative to max(1, |eigenvalue|)
    std::size_t max_iterations = 5000;
    std::uint64_t seed = 0x7f4a7c15;
    std::vector<std::vector<double>> initial_vectors{};  // full-space warm start
    bool precondition = true;                            // diagonal (Davidson) correction
};

struct SpectrumResult {
    std::vector<double> eigenvalues;           // ascending
    std::vector<std::vector<double>> vectors;  // full-space, when requested
    std::vector<double> residuals;             // iterative only
    EigenMethod method_used = EigenMethod::dense;
    std::size_t dimension = 0;  // dimension actually diagonalized
    std::size_t matvecs = 0;
};

namespace detail {

inline void check_request(const SpectrumRequest &req) {
    const auto &h = req.hamiltonian;
    for (const auto &t : h.terms()) {
        if (t.op.x().and_popcount(t.op.z()) % 2 != 0) {
            throw std::invalid_argument("Hamiltonian term " + t.op.str() + " is not Hermitian with a real coefficient");
        }
    }
    for (const auto &p : req.sector) {
        if (p.op.num_qubits() != h.num_qubits()) {
            throw std::invalid_argument("sector projector acts on the wrong number of qubits");
        }
        if (p.eigenvalue != 1 && p.eigenvalue != -1) {
            throw std::invalid_argument("sector eigenvalue must be +1 or -1");
        }
        for (const auto &t : h.terms()) {
            if (anticommutes(p.op, t.op)) {
                throw std::invalid_argument("sector projector " + p.op.str() + " does not commute with term " +
                                            t.op.str());
            }
        }
        for (const auto &q : req.sector) {
            if (anticommutes(p.op, q.op)) {
                throw std::invalid_argument("sector projectors do not commute");
            }
        }
    }
    if (req.num_eigenvalues == 0) {
        throw std::invalid_argument("num_eigenvalues must be positive");
    }
}

inline SpectrumResult dense_eigen(const Eigen::MatrixXd &m, std::size_t k, bool want_vectors,
                                  const std::function<std::vector<double>(const Eigen::VectorXd &)> &to_full) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("dense eigensolver failed", {});
    }
    SpectrumResult res;
    res.method_used = EigenMethod::dense;
    res.dimension = static_cast<std::size_t>(m.rows());
    std::size_t count = std::min<std::size_t>(k, res.dimension);
    for (std::size_t i = 0; i < count; ++i) {
        res.eigenvalues.push_back(solver.eigenvalues()(static_cast<Eigen::Index>(i)));
        if (want_vectors) {
            res.vectors.push_back(to_full(solver.eigenvectors().col(static_cast<Eigen::Index>(i))));
        }
    }
    return res;
}

// Restarted block Davidson: each step adds the (optionally diagonal-
// preconditioned) residuals of the unconverged lowest Ritz pairs, fully
// reorthogonalized against the stored basis. Without preconditioning this is a
// thick-restart block Krylov method. Blocks at least as wide as a degenerate
// multiplet resolve every copy of it.
class BlockDavidson {
   public:
    using Apply = std::function<void(const double *, double *)>;
    using Project = std::function<void(double *)>;

    BlockDavidson(std::size_t dim, Apply apply, Project project)
        : dim_(dim), apply_(std::move(apply)), project_(std::move(project)) {}

    void set_initial(Eigen::MatrixXd start) { initial_ = std::move(start); }
    void set_preconditioner(const std::vector<double> &diag) {
        diag_ = Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()));
    }

    SpectrumResult solve(std::size_t k, double tol, std::size_t max_iter, std::uint64_t seed, bool want_vectors) {
        const auto N = static_cast<Eigen::Index>(dim_);
        const std::size_t block = std::min(dim_, k + 4 + k / 4);
        const std::size_t max_basis = std::min(dim_, std::max<std::size_t>(4 * block, 40));
        const auto M = static_cast<Eigen::Index>(max_basis);
        V_.resize(N, M);
        W_.resize(N, M);
        T_ = Eigen::MatrixXd::Zero(M, M);
        size_ = 0;
        rng_.seed(seed);

        if (initial_.cols() > 0) {
            add_vectors(initial_);
        }
        Eigen::MatrixXd fresh = random_block(block > size_ ? block - size_ : 1);
        add_vectors(fresh);
        if (size_ == 0) {
            throw ConvergenceError("sector is empty or start vectors vanish under projection", {});
        }

        SpectrumResult res;
        res.method_used = EigenMethod::iterative;
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            const auto s = static_cast<Eigen::Index>(size_);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T_.topLeftCorner(s, s));
            const auto &theta = small.eigenvalues();
            const auto &Y = small.eigenvectors();
            const auto want = static_cast<Eigen::Index>(std::min<std::size_t>(block, size_));
            Eigen::MatrixXd X = V_.leftCols(s) * Y.leftCols(want);
            Eigen::MatrixXd R = W_.leftCols(s) * Y.leftCols(want) - X * theta.head(want).asDiagonal();

            std::vector<double> &norms = last_norms_;
            norms.assign(static_cast<std::size_t>(want), 0.0);
            bool all_converged = true;
            const auto kk = static_cast<Eigen::Index>(std::min<std::size_t>(k, size_));
            for (Eigen::Index i = 0; i < want; ++i) {
                norms[static_cast<std::size_t>(i)] = R.col(i).norm();
                if (i < kk && norms[static_cast<std::size_t>(i)] > tol * std::max(1.0, std::abs(theta(i)))) {
                    all_converged = false;
                }
            }
            if (all_converged || size_ == dim_) {
                for (Eigen::Index i = 0; i < kk; ++i) {
                    res.eigenvalues.push_back(theta(i));
                    res.residuals.push_back(norms[static_cast<std::size_t>(i)]);
                    if (want_vectors) {
                        Eigen::VectorXd x = X.col(i);
                        res.vectors.emplace_back(x.data(), x.data() + x.size());
                    }
                }
                res.dimension = dim_;
                res.matvecs = matvecs_;
                return res;
            }

            // Residuals of unconverged pairs become the next directions.
            std::vector<Eigen::Index> pick;
            for (Eigen::Index i = 0; i < want; ++i) {
                if (norms[static_cast<std::size_t>(i)] > tol * std::max(1.0, std::abs(theta(i)))) {
                    pick.push_back(i);
                }
            }
            Eigen::MatrixXd D(N, static_cast<Eigen::Index>(pick.size()));
            for (std::size_t c = 0; c < pick.size(); ++c) {
                auto col = static_cast<Eigen::Index>(c);
                D.col(col) = R.col(pick[c]) / norms[static_cast<std::size_t>(pick[c])];
                if (diag_.size() > 0) {
                    for (Eigen::Index r = 0; r < N; ++r) {
                        double den = diag_(r) - theta(pick[c]);
                        if (std::abs(den) < 1e-2) {
                            den = den < 0 ? -1e-2 : 1e-2;
                        }
                        D(r, col) /= den;
                    }
                }
            }

            if (size_ + pick.size() > max_basis) {
                // Thick restart on the lowest Ritz vectors.
                std::size_t keep = std::min({size_, k + block, max_basis - std::min(max_basis - 1, pick.size())});
                const auto kp = static_cast<Eigen::Index>(keep);
                Eigen::MatrixXd Vn = V_.leftCols(s) * Y.leftCols(kp);
                Eigen::MatrixXd Wn = W_.leftCols(s) * Y.leftCols(kp);
                V_.leftCols(kp) = Vn;
                W_.leftCols(kp) = Wn;
                T_.setZero();
                T_.topLeftCorner(kp, kp) = theta.head(kp).asDiagonal();
                size_ = keep;
            }
            std::size_t before = size_;
            add_vectors(D);
            if (size_ == before) {
                // Residual directions were already spanned; inject fresh randomness.
                Eigen::MatrixXd extra = random_block(std::min(block, max_basis - size_));
                add_vectors(extra);
                if (size_ == before) {
                    break;
                }
            }
        }
        throw ConvergenceError("iterative eigensolver did not converge in " + std::to_string(max_iter) + " iterations",
                               last_norms_);
    }

   private:
    Eigen::MatrixXd random_block(std::size_t count) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd B(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(count));
        for (Eigen::Index c = 0; c < B.cols(); ++c) {
            for (Eigen::Index r = 0; r < B.rows(); ++r) {
                B(r, c) = gauss(rng_);
            }
        }
        return B;
    }

    // Projects, orthogonalizes (two block passes against the basis, then two
    // Gram-Schmidt passes within the block) and appends candidate columns;
    // near-dependent candidates are dropped.
    void add_vectors(Eigen::MatrixXd &cand) {
        std::vector<double> start(static_cast<std::size_t>(cand.cols()));
        for (Eigen::Index c = 0; c < cand.cols(); ++c) {
            project_(cand.col(c).data());
            start[static_cast<std::size_t>(c)] = cand.col(c).norm();
        }
        const auto s0 = static_cast<Eigen::Index>(size_);
        if (s0 > 0) {
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::MatrixXd coef = V_.leftCols(s0).transpose() * cand;
                cand.noalias() -= V_.leftCols(s0) * coef;
                bool again = false;
                for (Eigen::Index c = 0; c < cand.cols(); ++c) {
                    again = again || cand.col(c).norm() < 0.7 * start[static_cast<std::size_t>(c)];
                }
                if (!again) {
                    break;
                }
            }
        }
        std::vector<Eigen::Index> added;
        for (Eigen::Index c = 0; c < cand.cols() && size_ < static_cast<std::size_t>(V_.cols()); ++c) {
            if (start[static_cast<std::size_t>(c)] == 0.0) {
                continue;
            }
            auto v = cand.col(c);
            for (int pass = 0; pass < 2; ++pass) {
                for (auto j : added) {
                    v -= V_.col(j).dot(v) * V_.col(j);
                }
            }
            double nrm = v.norm();
            if (nrm < 1e-8 * start[static_cast<std::size_t>(c)]) {
                continue;
            }
            const auto s = static_cast<Eigen::Index>(size_);
            V_.col(s) = v / nrm;
            ++size_;
            added.push_back(s);
        }
        if (added.empty()) {
            return;
        }
        for (auto c : added) {
            apply_(V_.col(c).data(), W_.col(c).data());
            ++matvecs_;
        }
        const auto s = static_cast<Eigen::Index>(size_);
        const auto first = added.front();
        const auto cnt = s - first;
        Eigen::MatrixXd cross = V_.leftCols(s).transpose() * W_.middleCols(first, cnt);
        T_.block(0, first, s, cnt) = cross;
        T_.block(first, 0, cnt, s) = cross.transpose();
        // Symmetrize the new diagonal block.
        Eigen::MatrixXd diagblk = T_.block(first, first, cnt, cnt);
        T_.block(first, first, cnt, cnt) = 0.5 * (diagblk + diagblk.transpose());
    }

    std::size_t dim_;
    Apply apply_;
    Project project_;
    Eigen::MatrixXd initial_;
    Eigen::VectorXd diag_;
    Eigen::MatrixXd V_;
    Eigen::MatrixXd W_;
    Eigen::MatrixXd T_;
    std::size_t size_ = 0;
    std::vector<double> last_norms_;
    std::size_t matvecs_ = 0;
    std::mt19937_64 rng_;
};

}  // namespace detail

/// Lowest eigenvalues (ascending, degeneracies repeated) of the Hamiltonian
/// restricted to the requested sector.
inline SpectrumResult eigenvalues(const SpectrumRequest &req) {
    detail::check_request(req);
    const std::size_t n = req.hamiltonian.num_qubits();
    const bool diagonal_sector = all_diagonal(req.sector);
    // Diagonal sectors shrink the working space by basis enumeration.
    Basis basis = diagonal_sector ? sector_basis(n, req.sector) : Basis::full(n);
    const std::size_t dim = basis.dim();
    if (dim == 0) {
        throw std::invalid_argument("requested sector is empty");
    }

    EigenMethod method = req.method;
    if (method == EigenMethod::automatic) {
        method = dim <= kDenseAutoLimit ? EigenMethod::dense : EigenMethod::iterative;
    }
    CompiledOperator op(req.hamiltonian, basis);

    if (method == EigenMethod::dense) {
        if (dim > kDenseHardLimit) {
            throw std::invalid_argument("dense diagonalization limited to dimension " +
                                        std::to_string(kDenseHardLimit) + ", got " + std::to_string(dim));
        }
        Eigen::MatrixXd h = op.dense();
        if (diagonal_sector) {
            return detail::dense_eigen(h, req.num_eigenvalues, req.compute_vectors, [&](const Eigen::VectorXd &v) {
                return basis.embed(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
            });
        }
        // General sector: orthonormal basis of the projector's range.
        const auto D = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXd P(D, D);
        for (Eigen::Index c = 0; c < D; ++c) {
            std::vector<double> e(dim, 0.0);
            e[static_cast<std::size_t>(c)] = 1.0;
            project_full(req.sector, e);
            for (Eigen::Index r = 0; r < D; ++r) {
                P(r, c) = e[static_cast<std::size_t>(r)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pe(0.5 * (P + P.transpose()));
        std::vector<Eigen::Index> range;
        for (Eigen::Index i = 0; i < D; ++i) {
            if (pe.eigenvalues()(i) > 0.5) {
                range.push_back(i);
            }
        }
        if (range.empty()) {
            throw std::invalid_argument("requested sector is empty");
        }
        Eigen::MatrixXd Q(D, static_cast<Eigen::Index>(range.size()));
        for (std::size_t c = 0; c < range.size(); ++c) {
            Q.col(static_cast<Eigen::Index>(c)) = pe.eigenvectors().col(range[c]);
        }
        Eigen::MatrixXd hs = Q.transpose() * h * Q;
        hs = 0.5 * (hs + hs.transpose());
        return detail::dense_eigen(hs, req.num_eigenvalues, req.compute_vectors, [&](const Eigen::VectorXd &v) {
            Eigen::VectorXd full = Q * v;
            return std::vector<double>(full.data(), full.data() + full.size());
        });
    }

    detail::BlockDavidson::Project project = [](double *) {};
    if (!diagonal_sector) {
        project = [&req, dim](double *v) {
            std::vector<double> tmp(v, v + dim);
            project_full(req.sector, tmp);
            std::copy(tmp.begin(), tmp.end(), v);
        };
    }
    detail::BlockDavidson solver(dim, [&op](const double *in, double *out) { op.apply(in, out); }, project);
    if (!req.initial_vectors.empty()) {
        Eigen::MatrixXd start(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(req.initial_vectors.size()));
        for (std::size_t c = 0; c < req.initial_vectors.size(); ++c) {
            const auto &v = req.initial_vectors[c];
            if (v.size() != basis.full_dim()) {
                throw std::invalid_argument("initial vector has the wrong length");
            }
            for (std::size_t r = 0; r < dim; ++r) {
                start(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[basis.state(r)];
            }
        }
        solver.set_initial(std::move(start));
    }
    if (req.precondition) {
        solver.set_preconditioner(op.diagonal());
    }
    SpectrumResult res = solver.solve(req.num_eigenvalues, req.tolerance, req.max_iterations, req.seed,
                                      req.compute_vectors);
    if (req.compute_vectors && !basis.is_full()) {
        for (auto &v : res.vectors) {
            v = basis.embed(v);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Real versus virtual spectra

struct LevelMatch {
    double virtual_level;  // offset included
    double real_level;
    double delta;
};

struct EquivalenceReport {
    std::string code_id;
    CouplingParams couplings;
    double E0_real = 0.0;
    double E0_virtual_plus_offset = 0.0;
    std::vector<LevelMatch> low_spectrum_match;
    std::vector<double> unmatched_virtual;
    std::vector<double> real_sector_levels;  // Z-type stabilizers and logicals all +1
    bool verdict = false;
    double tolerance = 1e-7;
    std::size_t real_dimension = 0;
    std::size_t virtual_sector_dimension = 0;
};

inline std::string code_id(const StabilizerCode &code) {
    const auto &lat = *code.lattice;
    return std::string(to_string(code.family)) + "/" + std::string(to_string(lat.kind())) + "/" +
           std::to_string(lat.L1()) + "x" + std::to_string(lat.L2());
}

/// Z-type loop operators of the code (empty if the loops cannot be built).
inline std::vector<PauliString> z_logicals(const StabilizerCode &code) {
    std::vector<LoopPath> loops = code.family == CodeFamily::toric ? nontrivial_loops(*code.lattice)
                                                                    : nontrivial_loops(*code.lattice, *code.coloring);
    std::vector<PauliString> out;
    for (const auto &l : logical_operators(code, loops).operators) {
        if (l.type == PauliType::z_type) {
            out.push_back(l.op);
        }
    }
    return out;
}

/// Greedy nearest matching; each real level is consumed at most once.
inline std::vector<LevelMatch> match_levels(const std::vector<double> &virtual_levels,
                                            const std::vector<double> &real_levels, double tol,
                                            std::vector<double> *unmatched) {
    std::vector<bool> used(real_levels.size(), false);
    std::vector<LevelMatch> out;
    for (double v : virtual_levels) {
        std::size_t best = real_levels.size();
        double best_delta = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < real_levels.size(); ++r) {
            double d = std::abs(real_levels[r] - v);
            if (!used[r] && d < best_delta) {
                best = r;
                best_delta = d;
            }
        }
        if (best < real_levels.size() && best_delta <= tol) {
            used[best] = true;
            out.push_back({v, real_levels[best], best_delta});
        } else if (unmatched != nullptr) {
            unmatched->push_back(v);
        }
    }
    return out;
}

inline SpectrumRequest virtual_request(const VirtualIsingModel &vm, const CouplingParams &cp, std::size_t levels) {
    SpectrumRequest req{.hamiltonian = build_tfim_hamiltonian(vm, cp)};
    req.num_eigenvalues = levels;
    for (const auto &c : vm.parity_constraints) {
        req.sector.push_back({z_type(vm.num_spins(), c), 1});
    }
    return req;
}

/// Diagonalizes the perturbed code Hamiltonian and the constrained virtual
/// TFIM independently and compares them.
inline EquivalenceReport verify_equivalence(const StabilizerCode &code, const BondSet &bonds, const CouplingParams &cp,
                                            std::size_t num_levels = 6, double tol = 1e-7) {
    VirtualIsingModel vm = derive_virtual_model(code, bonds);
    EquivalenceReport rep;
    rep.code_id = code_id(code);
    rep.couplings = cp;
    rep.tolerance = tol;

    HamiltonianTerms h = build_perturbed_hamiltonian(code, bonds, cp);
    SpectrumRequest full{.hamiltonian = h};
    full.num_eigenvalues = 1;
    SpectrumResult real = eigenvalues(full);
    rep.E0_real = real.eigenvalues.front();
    rep.real_dimension = real.dimension;

    SpectrumResult virt = eigenvalues(virtual_request(vm, cp, num_levels));
    rep.E0_virtual_plus_offset = virt.eigenvalues.front();
    rep.virtual_sector_dimension = virt.dimension;

    SpectrumRequest sector{.hamiltonian = h};
    sector.num_eigenvalues = num_levels;
    for (const auto &g : code.z_generators) {
        sector.sector.push_back({g, 1});
    }
    for (const auto &l : z_logicals(code)) {
        sector.sector.push_back({l, 1});
    }
    rep.real_sector_levels = eigenvalues(sector).eigenvalues;
    rep.low_spectrum_match = match_levels(virt.eigenvalues, rep.real_sector_levels, tol, &rep.unmatched_virtual);

    rep.verdict = std::abs(rep.E0_real - rep.E0_virtual_plus_offset) <= tol && rep.unmatched_virtual.empty();
    return rep;
}

struct SplittingReport {
    double spread = 0.0;  // max - min over the lowest k levels
    double gap = 0.0;     // level k+1 minus level k
    std::vector<double> levels;
};

inline SplittingReport degeneracy_splitting(const StabilizerCode &code, const BondSet &bonds, const CouplingParams &cp,
                                            std::size_t k) {
    SpectrumRequest req{.hamiltonian = build_perturbed_hamiltonian(code, bonds, cp)};
    req.num_eigenvalues = k + 1;
    SpectrumResult res = eigenvalues(req);
    if (res.eigenvalues.size() < k + 1) {
        throw std::invalid_argument("spectrum has fewer than k + 1 levels");
    }
    SplittingReport rep;
    rep.levels = res.eigenvalues;
    rep.spread = res.eigenvalues[k - 1] - res.eigenvalues[0];
    rep.gap = res.eigenvalues[k] - res.eigenvalues[k - 1];
    return rep;
}

}  // namespace topoising
