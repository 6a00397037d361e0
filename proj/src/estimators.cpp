// SPDX-License-Identifier: Apache-2.0
//
// holosparse - wavenumber-domain synthesis and sparse estimation of
// holographic MIMO channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "holosparse/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "holosparse/channel.hpp"

namespace holosparse {

namespace {

using cd = std::complex<double>;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct AtomProducts {
    Eigen::MatrixXcd a;       // C * Phi_R, N_RF x n_rx_atoms
    Eigen::MatrixXcd b;       // Phi_S^H * X, n_tx_atoms x P
    Eigen::VectorXd a_norms;  // column norms of a
    Eigen::VectorXd b_norms;  // row norms of b
};

AtomProducts make_products(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                           const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                           const SparsifyingBasis& basis_tx) {
    require(c.cols() == basis_rx.rows(), "combiner width must match receive elements");
    require(x.rows() == basis_tx.rows(), "pilot height must match transmit elements");
    require(y.rows() == c.rows() && y.cols() == x.cols(),
            "observation dimensions must match combiner rows and pilot length");
    AtomProducts p;
    p.a = basis_rx.left_product(c);
    p.b = basis_tx.adjoint_product(x);
    p.a_norms = p.a.colwise().norm();
    p.b_norms = p.b.rowwise().norm();
    return p;
}

/// Normalized correlation of every atom pair with the residual, up to the
/// common factor ||Y_res||_F: |a_i^H Y_res b_j*| / (||a_i|| ||b_j||).
Eigen::MatrixXd correlation_metric(const AtomProducts& p, const Eigen::MatrixXcd& y_res) {
    const Eigen::MatrixXcd g = p.a.adjoint() * y_res * p.b.adjoint();
    Eigen::MatrixXd metric(g.rows(), g.cols());
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const double an = p.a_norms(i);
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double den = an * p.b_norms(j);
            metric(i, j) = den > 0.0 ? std::abs(g(i, j)) / den : 0.0;
        }
    }
    return metric;
}

Eigen::MatrixXcd select_columns(const Eigen::MatrixXcd& a,
                                const std::vector<std::pair<int, int>>& support) {
    Eigen::MatrixXcd out(a.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t u = 0; u < support.size(); ++u) out.col(u) = a.col(support[u].first);
    return out;
}

Eigen::MatrixXcd select_rows(const Eigen::MatrixXcd& b,
                             const std::vector<std::pair<int, int>>& support) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(support.size()), b.cols());
    for (std::size_t u = 0; u < support.size(); ++u) out.row(u) = b.row(support[u].second);
    return out;
}

Eigen::MatrixXcd residual_for(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& a_sel,
                              const Eigen::VectorXcd& w, const Eigen::MatrixXcd& b_sel) {
    return y - a_sel * w.asDiagonal() * b_sel;
}

EstimateResult finish_result(const SparsifyingBasis& basis_rx,
                             const SparsifyingBasis& basis_tx,
                             const std::vector<std::pair<int, int>>& support,
                             const Eigen::VectorXcd& w, int iterations,
                             std::vector<double> history, double res_norm,
                             bool regularized) {
    EstimateResult out;
    out.h_wavenumber = Eigen::MatrixXcd::Zero(basis_rx.cols(), basis_tx.cols());
    out.support.reserve(support.size());
    for (std::size_t u = 0; u < support.size(); ++u) {
        out.h_wavenumber(support[u].first, support[u].second) = w(u);
        out.support.push_back({support[u].first, support[u].second, w(u)});
    }
    out.h_spatial = synthesize_spatial(basis_rx, out.h_wavenumber, basis_tx);
    out.iterations_used = iterations;
    out.residual_norm = res_norm;
    out.residual_history = std::move(history);
    out.regularized = regularized;
    return out;
}

}  // namespace

Eigen::VectorXcd solve_weights(const Eigen::MatrixXcd& atoms_rx,
                               const Eigen::MatrixXcd& atoms_tx,
                               const Eigen::MatrixXcd& y, bool* regularized) {
    const Eigen::Index u = atoms_rx.cols();
    require(u >= 1, "solve_weights needs at least one atom");
    require(atoms_tx.rows() == u, "atom list sizes disagree");
    require(atoms_rx.rows() == y.rows() && atoms_tx.cols() == y.cols(),
            "atom dimensions do not match the observation");

    // F[m,n] = (a_n^H a_m) (b_m^T b_n*): conjugate Gram of the a's times the
    // plain Gram of the b's, assembled entrywise.
    const Eigen::MatrixXcd ga = atoms_rx.adjoint() * atoms_rx;
    const Eigen::MatrixXcd gb = atoms_tx * atoms_tx.adjoint();
    const Eigen::MatrixXcd f_mat = ga.conjugate().cwiseProduct(gb);

    // f[n] = tr(a_n b_n^T Y^H) = b_n^T (Y^H a_n)
    const Eigen::MatrixXcd z = y.adjoint() * atoms_rx;  // P x u
    Eigen::VectorXcd f(u);
    for (Eigen::Index n = 0; n < u; ++n) f(n) = (atoms_tx.row(n) * z.col(n)).value();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f_mat);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lmax = ev.maxCoeff();
    const double lmin = ev.minCoeff();

    Eigen::VectorXcd w;
    if (!(lmin > 0.0) || lmax / lmin > 1e12) {
        const double eps = 1e-10 * f_mat.trace().real() / static_cast<double>(u);
        const Eigen::MatrixXcd reg =
            f_mat + eps * Eigen::MatrixXcd::Identity(u, u);
        w = reg.ldlt().solve(f);
        if (regularized) *regularized = true;
    } else {
        w = es.eigenvectors() *
            (es.eigenvectors().adjoint() * f).cwiseQuotient(ev.cast<cd>());
    }
    return w.conjugate();
}

EstimateResult basis_omp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                         const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                         const SparsifyingBasis& basis_tx, int u_iter) {
    const long total_atoms = static_cast<long>(basis_rx.cols()) * basis_tx.cols();
    require(u_iter >= 1 && u_iter <= total_atoms, "iteration count out of range");
    const AtomProducts p = make_products(y, x, c, basis_rx, basis_tx);
    const int n_tx_atoms = basis_tx.cols();

    Eigen::MatrixXcd y_res = y;
    std::vector<std::pair<int, int>> support;
    std::vector<char> used(static_cast<std::size_t>(total_atoms), 0);
    Eigen::MatrixXcd a_sel(y.rows(), 0);
    Eigen::MatrixXcd b_sel(0, y.cols());
    Eigen::VectorXcd w;
    std::vector<double> history;
    bool regularized = false;

    for (int it = 0; it < u_iter; ++it) {
        const Eigen::MatrixXd metric = correlation_metric(p, y_res);
        int best_i = -1, best_j = -1;
        double best = -1.0;
        for (int i = 0; i < metric.rows(); ++i)
            for (int j = 0; j < metric.cols(); ++j) {
                if (used[static_cast<std::size_t>(i) * n_tx_atoms + j]) continue;
                if (metric(i, j) > best) {
                    best = metric(i, j);
                    best_i = i;
                    best_j = j;
                }
            }
        support.emplace_back(best_i, best_j);
        used[static_cast<std::size_t>(best_i) * n_tx_atoms + best_j] = 1;

        a_sel.conservativeResize(Eigen::NoChange, it + 1);
        a_sel.col(it) = p.a.col(best_i);
        b_sel.conservativeResize(it + 1, Eigen::NoChange);
        b_sel.row(it) = p.b.row(best_j);

        w = solve_weights(a_sel, b_sel, y, &regularized);
        y_res = residual_for(y, a_sel, w, b_sel);
        history.push_back(y_res.norm());
    }
    const double res_norm = history.back();
    return finish_result(basis_rx, basis_tx, support, w, u_iter, std::move(history),
                         res_norm, regularized);
}

EstimateResult wd_omp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                      const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                      const SparsifyingBasis& basis_tx, int u_iter) {
    return basis_omp(y, x, c, basis_rx, basis_tx, u_iter);
}

EstimateResult basis_cosamp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                            const SparsifyingBasis& basis_tx, int sparsity, int max_iter) {
    const long total_atoms = static_cast<long>(basis_rx.cols()) * basis_tx.cols();
    require(sparsity >= 1 && 3L * sparsity <= total_atoms,
            "sparsity must satisfy 1 <= K and 3K <= atom count");
    require(max_iter >= 1, "max_iter must be positive");
    const AtomProducts p = make_products(y, x, c, basis_rx, basis_tx);
    const int n_tx_atoms = basis_tx.cols();
    const auto linear = [n_tx_atoms](const std::pair<int, int>& s) {
        return static_cast<long>(s.first) * n_tx_atoms + s.second;
    };

    Eigen::MatrixXcd y_res = y;
    std::vector<std::pair<int, int>> support;
    Eigen::VectorXcd w;
    std::vector<double> history;
    bool regularized = false;

    std::vector<std::pair<int, int>> best_support;
    Eigen::VectorXcd best_w;
    double best_res = std::numeric_limits<double>::infinity();
    double prev_res = y.norm();
    int iterations = 0;

    for (int it = 0; it < max_iter; ++it) {
        ++iterations;
        const Eigen::MatrixXd metric = correlation_metric(p, y_res);

        // 2K strongest pairs not already in the support
        std::vector<char> used(static_cast<std::size_t>(total_atoms), 0);
        for (const auto& s : support) used[static_cast<std::size_t>(linear(s))] = 1;
        std::vector<std::pair<double, long>> ranked;
        ranked.reserve(static_cast<std::size_t>(total_atoms));
        for (int i = 0; i < metric.rows(); ++i)
            for (int j = 0; j < metric.cols(); ++j) {
                const long lin = static_cast<long>(i) * n_tx_atoms + j;
                if (!used[static_cast<std::size_t>(lin)])
                    ranked.emplace_back(metric(i, j), lin);
            }
        const std::size_t take =
            std::min<std::size_t>(2 * static_cast<std::size_t>(sparsity), ranked.size());
        std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end(),
                          [](const auto& l, const auto& r) {
                              return l.first > r.first ||
                                     (l.first == r.first && l.second < r.second);
                          });

        std::vector<std::pair<int, int>> merged = support;
        for (std::size_t t = 0; t < take; ++t) {
            const long lin = ranked[t].second;
            merged.emplace_back(static_cast<int>(lin / n_tx_atoms),
                                static_cast<int>(lin % n_tx_atoms));
        }

        Eigen::MatrixXcd a_m = select_columns(p.a, merged);
        Eigen::MatrixXcd b_m = select_rows(p.b, merged);
        const Eigen::VectorXcd w_m = solve_weights(a_m, b_m, y, &regularized);

        // prune to the K largest weights, deterministic on ties
        std::vector<std::size_t> order(merged.size());
        for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
        std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            const double ml = std::abs(w_m(static_cast<Eigen::Index>(l)));
            const double mr = std::abs(w_m(static_cast<Eigen::Index>(r)));
            return ml > mr || (ml == mr && linear(merged[l]) < linear(merged[r]));
        });
        std::vector<std::pair<int, int>> pruned;
        pruned.reserve(static_cast<std::size_t>(sparsity));
        for (int t = 0; t < sparsity && t < static_cast<int>(order.size()); ++t)
            pruned.push_back(merged[order[static_cast<std::size_t>(t)]]);
        std::sort(pruned.begin(), pruned.end(),
                  [&](const auto& l, const auto& r) { return linear(l) < linear(r); });

        Eigen::MatrixXcd a_p = select_columns(p.a, pruned);
        Eigen::MatrixXcd b_p = select_rows(p.b, pruned);
        w = solve_weights(a_p, b_p, y, &regularized);
        support = std::move(pruned);
        y_res = residual_for(y, a_p, w, b_p);
        const double res = y_res.norm();
        history.push_back(res);

        if (res < best_res) {
            best_res = res;
            best_support = support;
            best_w = w;
        }
        if (res >= prev_res * (1.0 - 1e-6)) break;
        prev_res = res;
    }

    return finish_result(basis_rx, basis_tx, best_support, best_w, iterations,
                         std::move(history), best_res, regularized);
}

Eigen::MatrixXcd ls_estimate(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                             const Eigen::MatrixXcd& c) {
    require(y.rows() == c.rows() && y.cols() == x.cols(),
            "observation dimensions must match combiner rows and pilot length");
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod_c(c);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod_x(x);
    return cod_c.pseudoInverse() * y * cod_x.pseudoInverse();
}

double nmse(const Eigen::MatrixXcd& h_hat, const Eigen::MatrixXcd& h) {
    require(h_hat.rows() == h.rows() && h_hat.cols() == h.cols(),
            "nmse operands must have equal dimensions");
    const double den = h.squaredNorm();
    if (!(den > 0.0)) throw std::domain_error("nmse undefined for a zero channel");
    return (h_hat - h).squaredNorm() / den;
}

double nmse_db(const Eigen::MatrixXcd& h_hat, const Eigen::MatrixXcd& h) {
    return 10.0 * std::log10(nmse(h_hat, h));
}

}  // namespace holosparse
