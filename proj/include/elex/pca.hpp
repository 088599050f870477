#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elex/embeddings.hpp"
#include "elex/error.hpp"

namespace elex {

/// Linear projection onto the leading principal directions.
struct PcaModel {
    Eigen::VectorXd mean;                // input_dim
    Eigen::MatrixXd components;          // out_dim x input_dim, orthonormal rows, descending variance
    Eigen::VectorXd explained_variance;  // out_dim, descending, >= 0

    std::size_t input_dim() const { return static_cast<std::size_t>(mean.size()); }
    std::size_t out_dim() const { return static_cast<std::size_t>(components.rows()); }

    Eigen::VectorXd project(Vec v) const {
        if (v.size() != input_dim())
            throw NumericError("project: expected dim " + std::to_string(input_dim()) + ", got " +
                               std::to_string(v.size()));
        const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
        return components * (x - mean);
    }
};

/// PCA over the rows of `points` (n x d) via eigendecomposition of the sample covariance.
/// Each component's largest-magnitude coordinate is made positive (first index wins ties),
/// so fitted models are reproducible bit for bit.
inline PcaModel fit_pca(const Eigen::MatrixXd& points, std::size_t out_dim = 3) {
    const auto n = points.rows();
    const auto d = points.cols();
    if (out_dim == 0) throw std::invalid_argument("fit_pca: out_dim must be positive");
    if (n <= static_cast<Eigen::Index>(out_dim))
        throw NumericError("fit_pca: need more than " + std::to_string(out_dim) + " points, got " + std::to_string(n));
    if (d < static_cast<Eigen::Index>(out_dim))
        throw NumericError("fit_pca: input dim " + std::to_string(d) + " is below out_dim " + std::to_string(out_dim));

    PcaModel model;
    model.mean = points.colwise().mean().transpose();
    const Eigen::MatrixXd centered = points.rowwise() - model.mean.transpose();
    const Eigen::MatrixXd cov = (centered.adjoint() * centered) / static_cast<double>(n - 1);
    if (!(cov.trace() > 0.0)) throw NumericError("fit_pca: degenerate covariance (all points identical)");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericError("fit_pca: eigendecomposition failed");

    const auto k = static_cast<Eigen::Index>(out_dim);
    model.components.resize(k, d);
    model.explained_variance.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::Index src = d - 1 - c;  // eigenvalues come ascending
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index arg = 0;
        for (Eigen::Index j = 1; j < d; ++j)
            if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
        if (v(arg) < 0) v = -v;
        model.components.row(c) = v.transpose();
        model.explained_variance(c) = std::max(0.0, solver.eigenvalues()(src));
    }
    return model;
}

inline Eigen::MatrixXd gather_rows(const EmbeddingTable& table, const std::vector<std::string>& words) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(words.size()), static_cast<Eigen::Index>(table.dim()));
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto v = table.find(words[i]);
        if (!v) throw NumericError("fit_pca: word not in embedding table: " + words[i]);
        for (std::size_t j = 0; j < table.dim(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*v)[j];
    }
    return m;
}

inline PcaModel fit_pca(const EmbeddingTable& table, const std::vector<std::string>& words, std::size_t out_dim = 3) {
    return fit_pca(gather_rows(table, words), out_dim);
}

}  // namespace elex
