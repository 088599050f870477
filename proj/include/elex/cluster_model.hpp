#pragma once

#include <string>
#include <vector>

#include "elex/calibrate.hpp"
#include "elex/embeddings.hpp"
#include "elex/gmm.hpp"
#include "elex/json_io.hpp"
#include "elex/lexicon.hpp"
#include "elex/pca.hpp"
#include "elex/version.hpp"

namespace elex {

// PCA projection + Gaussian mixture + per-cluster similarity statistics.
struct ClusterModel {
    std::size_t dim = 0;
    PcaModel pca;
    GmmModel gmm;
    ClusterStats stats;
};

struct ClusterOptions {
    std::size_t pca_dim = 3;
    GmmOptions gmm;
};

/// Fit on the lexicon words that have embeddings: PCA over their vectors, the mixture
/// over their projections, then same-cluster similarity statistics.
inline ClusterModel fit_cluster_model(const EmbeddingTable& table, const Lexicon& lex, const ClusterOptions& opt = {}) {
    const CoveredWords covered = covered_lexicon_words(table, lex);
    if (!covered.coverage.missing.empty())
        warn(std::to_string(covered.coverage.missing.size()) + " lexicon word(s) have no embedding and are left out");

    ClusterModel model;
    model.dim = table.dim();
    model.pca = fit_pca(table, covered.words, opt.pca_dim);

    std::vector<Eigen::VectorXd> projected(covered.rows.size());
    parallel_for(covered.rows.size(), opt.gmm.threads,
                 [&](std::size_t i) { projected[i] = model.pca.project(table.row(covered.rows[i])); });
    model.gmm = fit_gmm(projected, opt.gmm);
    if (!model.gmm.converged)
        warn("EM did not converge within " + std::to_string(opt.gmm.max_iter) + " iterations");
    model.stats = compute_cluster_stats(table, lex, model.pca, model.gmm, opt.gmm.threads);
    return model;
}

namespace detail {

inline Json vec_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline Json mat_json(const Eigen::MatrixXd& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
    return a;
}

inline Eigen::VectorXd json_vec(const Json& a) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a.at(i).get<double>();
    return v;
}

inline Eigen::MatrixXd json_mat(const Json& a) {
    if (a.empty()) return {};
    const std::size_t cols = a.at(0).size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a.at(r).size() != cols) throw FormatError("ragged matrix in cluster model");
        m.row(static_cast<Eigen::Index>(r)) = json_vec(a.at(r)).transpose();
    }
    return m;
}

}  // namespace detail

inline Json to_json(const ClusterModel& m) {
    Json j;
    j["dim"] = m.dim;
    j["pca"] = {{"mean", detail::vec_json(m.pca.mean)},
                {"components", detail::mat_json(m.pca.components)},
                {"explained_variance", detail::vec_json(m.pca.explained_variance)}};
    Json gmm;
    gmm["weights"] = m.gmm.weights;
    gmm["means"] = Json::array();
    gmm["covariances"] = Json::array();
    for (std::size_t k = 0; k < m.gmm.size(); ++k) {
        gmm["means"].push_back(detail::vec_json(m.gmm.means[k]));
        gmm["covariances"].push_back(detail::mat_json(m.gmm.covariances[k]));
    }
    gmm["seed"] = m.gmm.seed;
    gmm["restart"] = m.gmm.restart;
    gmm["converged"] = m.gmm.converged;
    gmm["iterations"] = m.gmm.iterations;
    gmm["log_likelihood_trace"] = m.gmm.log_likelihood_trace;
    j["gmm"] = std::move(gmm);
    j["stats"] = {{"mu", m.stats.mu},
                  {"sigma", m.stats.sigma},
                  {"pair_count", m.stats.pair_count},
                  {"sigma_c", m.stats.sigma_c}};
    j["tool_version"] = kToolVersion;
    return j;
}

inline ClusterModel cluster_model_from_json(const Json& j) {
    try {
        ClusterModel m;
        m.dim = j.at("dim").get<std::size_t>();
        const Json& pca = j.at("pca");
        m.pca.mean = detail::json_vec(pca.at("mean"));
        m.pca.components = detail::json_mat(pca.at("components"));
        m.pca.explained_variance = detail::json_vec(pca.at("explained_variance"));
        if (m.pca.input_dim() != m.dim || static_cast<std::size_t>(m.pca.components.cols()) != m.dim)
            throw FormatError("cluster model: PCA dimensions do not match dim");

        const Json& gmm = j.at("gmm");
        m.gmm.weights = gmm.at("weights").get<std::vector<double>>();
        for (const auto& mean : gmm.at("means")) m.gmm.means.push_back(detail::json_vec(mean));
        for (const auto& cov : gmm.at("covariances")) m.gmm.covariances.push_back(detail::json_mat(cov));
        m.gmm.seed = gmm.at("seed").get<std::uint64_t>();
        m.gmm.restart = gmm.value("restart", std::size_t{0});
        m.gmm.converged = gmm.value("converged", true);
        m.gmm.iterations = gmm.value("iterations", std::size_t{0});
        if (gmm.contains("log_likelihood_trace"))
            m.gmm.log_likelihood_trace = gmm["log_likelihood_trace"].get<std::vector<double>>();
        const std::size_t k = m.gmm.weights.size();
        if (k == 0 || m.gmm.means.size() != k || m.gmm.covariances.size() != k)
            throw FormatError("cluster model: inconsistent mixture component counts");
        for (std::size_t c = 0; c < k; ++c)
            if (m.gmm.dim() != m.pca.out_dim() || static_cast<std::size_t>(m.gmm.means[c].size()) != m.pca.out_dim() ||
                static_cast<std::size_t>(m.gmm.covariances[c].rows()) != m.pca.out_dim())
                throw FormatError("cluster model: mixture dimension does not match PCA output");

        const Json& stats = j.at("stats");
        m.stats.mu = stats.at("mu").get<std::vector<double>>();
        m.stats.sigma = stats.at("sigma").get<std::vector<double>>();
        m.stats.pair_count = stats.at("pair_count").get<std::vector<std::uint64_t>>();
        m.stats.sigma_c = stats.value("sigma_c", kSigmaC);
        if (m.stats.mu.size() != k || m.stats.sigma.size() != k || m.stats.pair_count.size() != k)
            throw FormatError("cluster model: stats do not match component count");
        return m;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("cluster model: ") + e.what());
    }
}

// All reals with 17 significant digits.
inline void save_cluster_model(const ClusterModel& m, const std::string& path) {
    write_text_file(path, dump_json(to_json(m), RealFormat::digits17, 2) + "\n");
}

inline ClusterModel load_cluster_model(const std::string& path) {
    return cluster_model_from_json(parse_json(read_text_file(path)));
}

}  // namespace elex
