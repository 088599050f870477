#include <gtest/gtest.h>

#include "elex/pca.hpp"
#include "support/oracles.hpp"
#include "support/test_support.hpp"

namespace elex {
namespace {

Eigen::MatrixXd random_points(test::Rng& rng, std::size_t n, std::size_t d, const std::vector<double>& scales) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal(scales[static_cast<std::size_t>(j)]) + 0.5 * j;
    return m;
}

std::vector<oracle::Vector> rows_of(const Eigen::MatrixXd& m) {
    std::vector<oracle::Vector> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(test::to_vector(m.row(i).transpose()));
    return out;
}

TEST(Pca, RankOneDataIsCapturedByFirstComponent) {
    test::Rng rng(1);
    const std::vector<double> dir = {0.2, -0.5, 0.7, 0.1, 0.4};
    Eigen::MatrixXd m(60, 5);
    for (Eigen::Index i = 0; i < 60; ++i) {
        const double t = rng.normal(3.0);
        for (Eigen::Index j = 0; j < 5; ++j) m(i, j) = 1.0 + t * dir[static_cast<std::size_t>(j)] + rng.normal(1e-4);
    }
    const auto pca = fit_pca(m, 3);
    const double total = pca.explained_variance.sum();
    EXPECT_GE(pca.explained_variance(0) / total, 0.999);
    const double dnorm = std::sqrt(oracle::dot(dir, dir));
    double align = 0;
    for (Eigen::Index j = 0; j < 5; ++j) align += pca.components(0, j) * dir[static_cast<std::size_t>(j)] / dnorm;
    EXPECT_NEAR(std::abs(align), 1.0, 1e-6);
}

TEST(Pca, MatchesJacobiOracleOnRandomData) {
    test::Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 4 + static_cast<std::size_t>(trial % 5);
        std::vector<double> scales(d);
        for (std::size_t j = 0; j < d; ++j) scales[j] = 4.0 / static_cast<double>(j + 1);
        const auto m = random_points(rng, 80, d, scales);
        const auto pca = fit_pca(m, 3);
        const auto [values, vectors] = oracle::jacobi_eigen(oracle::sample_covariance(rows_of(m)));
        for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(pca.explained_variance(static_cast<Eigen::Index>(c)), values[c], 1e-9 * values[0]);
            double align = 0;
            for (std::size_t j = 0; j < d; ++j) align += pca.components(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) * vectors[c][j];
            EXPECT_NEAR(std::abs(align), 1.0, 1e-8);
        }
    }
}

TEST(Pca, ProjectionGeometry) {
    test::Rng rng(3);
    const auto m = random_points(rng, 50, 6, {3, 2.5, 2, 1.5, 1, 0.5});
    const auto pca = fit_pca(m, 3);
    const auto mean = test::to_vector(pca.mean);
    EXPECT_LT(pca.project(mean).norm(), 1e-12);

    auto shifted = mean;
    for (std::size_t j = 0; j < 6; ++j) shifted[j] += pca.components(0, static_cast<Eigen::Index>(j));
    const auto e1 = pca.project(shifted);
    EXPECT_NEAR(e1(0), 1.0, 1e-12);
    EXPECT_NEAR(e1(1), 0.0, 1e-12);
    EXPECT_NEAR(e1(2), 0.0, 1e-12);

    const auto comps = test::to_matrix(pca.components);
    for (int t = 0; t < 100; ++t) {
        const auto v = rng.normal_vector(6, 3.0);
        const auto got = pca.project(v);
        const auto want = oracle::project(mean, comps, v);
        for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(got(static_cast<Eigen::Index>(c)), want[c], 1e-9);
    }
}

TEST(Pca, ComponentsOrthonormalDescendingAndSignFixed) {
    test::Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_points(rng, 40, 8, {5, 4, 3, 2, 1, 1, 1, 1});
        const auto pca = fit_pca(m, 3);
        const Eigen::MatrixXd gram = pca.components * pca.components.transpose();
        EXPECT_LT((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-8);
        for (Eigen::Index c = 0; c < 3; ++c) {
            if (c > 0) {
                EXPECT_GE(pca.explained_variance(c - 1), pca.explained_variance(c));
            }
            Eigen::Index arg = 0;
            pca.components.row(c).cwiseAbs().maxCoeff(&arg);
            EXPECT_GT(pca.components(c, arg), 0.0);
        }
    }
}

TEST(Pca, SignConventionSurvivesNegatedInput) {
    test::Rng rng(5);
    const auto m = random_points(rng, 40, 5, {5, 3, 2, 1, 0.5});
    const auto a = fit_pca(m, 3);
    const auto b = fit_pca(-m, 3);
    EXPECT_LT((a.components - b.components).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Pca, RejectsDegenerateInput) {
    EXPECT_THROW(fit_pca(Eigen::MatrixXd::Ones(10, 4), 3), NumericError);
    EXPECT_THROW(fit_pca(Eigen::MatrixXd::Random(3, 4), 3), NumericError);
    EXPECT_THROW(fit_pca(Eigen::MatrixXd::Random(10, 2), 3), NumericError);
}

}  // namespace
}  // namespace elex
