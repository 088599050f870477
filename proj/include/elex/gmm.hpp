#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elex/error.hpp"
#include "elex/parallel.hpp"

namespace elex {

struct GmmOptions {
    std::size_t components = 3;
    std::uint64_t seed = 0;
    double tol = 1e-6;           // on the mean per-point log-likelihood
    std::size_t max_iter = 500;
    double reg = 1e-6;           // added to every covariance diagonal each M-step
    std::size_t restarts = 1;
    unsigned threads = 1;
};

/// Full-covariance Gaussian mixture fitted by EM.
struct GmmModel {
    std::vector<double> weights;
    std::vector<Eigen::VectorXd> means;
    std::vector<Eigen::MatrixXd> covariances;
    std::uint64_t seed = 0;
    std::size_t restart = 0;
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<double> log_likelihood_trace;  // mean per-point log-likelihood after each E-step

    std::size_t size() const { return weights.size(); }
    std::size_t dim() const { return means.empty() ? 0 : static_cast<std::size_t>(means.front().size()); }
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// log N(x | mean, cov) for every component, via Cholesky.
struct ComponentDensity {
    Eigen::LLT<Eigen::MatrixXd> chol;
    double log_norm = 0.0;  // -0.5 (d log 2pi + log|cov|)
    Eigen::VectorXd mean;

    ComponentDensity(const Eigen::VectorXd& m, const Eigen::MatrixXd& cov) : chol(cov), mean(m) {
        if (chol.info() != Eigen::Success) throw NumericError("GMM covariance is not positive definite");
        const Eigen::MatrixXd& l = chol.matrixL();
        double log_det = 0.0;
        for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
        log_norm = -0.5 * (static_cast<double>(m.size()) * std::log(2.0 * std::numbers::pi) + log_det);
    }

    double log_density(const Eigen::VectorXd& x) const {
        const Eigen::VectorXd z = chol.matrixL().solve(x - mean);
        return log_norm - 0.5 * z.squaredNorm();
    }
};

inline std::vector<ComponentDensity> densities(const GmmModel& m) {
    std::vector<ComponentDensity> out;
    out.reserve(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) out.emplace_back(m.means[k], m.covariances[k]);
    return out;
}

inline double log_sum_exp(const std::vector<double>& v) {
    const double mx = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

inline std::size_t nearest_mean(const GmmModel& m, const Eigen::VectorXd& x) {
    // rescale so squared distances of far-away points stay finite
    double scale = 0.0;
    for (const auto& mean : m.means) scale = std::max(scale, (x - mean).cwiseAbs().maxCoeff());
    if (!(scale > 0.0)) return 0;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double d = ((x - m.means[k]) / scale).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

inline std::vector<double> posterior_with(const GmmModel& m, const std::vector<ComponentDensity>& dens,
                                          const Eigen::VectorXd& x) {
    std::vector<double> logp(m.size());
    for (std::size_t k = 0; k < m.size(); ++k) logp[k] = std::log(m.weights[k]) + dens[k].log_density(x);
    const double lse = log_sum_exp(logp);
    std::vector<double> p(m.size(), 0.0);
    if (!std::isfinite(lse)) {
        // every weighted density underflowed or overflowed: one-hot on the nearest mean
        p[nearest_mean(m, x)] = 1.0;
        return p;
    }
    for (std::size_t k = 0; k < m.size(); ++k) p[k] = std::exp(logp[k] - lse);
    return p;
}

inline std::size_t count_distinct(const std::vector<Eigen::VectorXd>& points, std::size_t stop_at) {
    std::vector<const Eigen::VectorXd*> sorted;
    sorted.reserve(points.size());
    for (const auto& p : points) sorted.push_back(&p);
    auto less = [](const Eigen::VectorXd* a, const Eigen::VectorXd* b) {
        return std::lexicographical_compare(a->data(), a->data() + a->size(), b->data(), b->data() + b->size());
    };
    std::sort(sorted.begin(), sorted.end(), less);
    std::size_t distinct = sorted.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sorted.size() && distinct < stop_at; ++i)
        if (*sorted[i] != *sorted[i - 1]) ++distinct;
    return distinct;
}

// k-means++ seeding: first centre uniform, then proportional to squared distance.
inline std::vector<std::size_t> kmeanspp_centres(const std::vector<Eigen::VectorXd>& points, std::size_t k,
                                                 std::mt19937_64& rng) {
    const std::size_t n = points.size();
    std::vector<std::size_t> centres;
    centres.push_back(std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n))));
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    while (centres.size() < k) {
        const auto& last = points[centres.back()];
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], (points[i] - last).squaredNorm());
            total += d2[i];
        }
        const double target = uniform01(rng) * total;
        double acc = 0.0;
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] <= 0.0) continue;
            acc += d2[i];
            if (acc > target) {
                pick = i;
                break;
            }
        }
        if (pick == n) {  // rounding at the tail: last point with positive distance
            for (std::size_t i = n; i-- > 0;)
                if (d2[i] > 0.0) {
                    pick = i;
                    break;
                }
        }
        centres.push_back(pick);
    }
    return centres;
}

inline void m_step(const std::vector<Eigen::VectorXd>& points, const Eigen::MatrixXd& resp, double reg, GmmModel& m) {
    const std::size_t n = points.size();
    const std::size_t k = static_cast<std::size_t>(resp.cols());
    const Eigen::Index d = points.front().size();
    const double eps = 10.0 * std::numeric_limits<double>::epsilon();
    for (std::size_t c = 0; c < k; ++c) {
        const auto ci = static_cast<Eigen::Index>(c);
        double nk = eps;
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = resp(static_cast<Eigen::Index>(i), ci);
            nk += r;
            mean += r * points[i];
        }
        mean /= nk;
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::VectorXd diff = points[i] - mean;
            cov.noalias() += resp(static_cast<Eigen::Index>(i), ci) * diff * diff.transpose();
        }
        cov /= nk;
        cov = 0.5 * (cov + cov.transpose());
        cov.diagonal().array() += reg;
        m.weights[c] = nk / static_cast<double>(n);
        m.means[c] = std::move(mean);
        m.covariances[c] = std::move(cov);
    }
    double total = 0.0;
    for (double w : m.weights) total += w;
    for (double& w : m.weights) w /= total;
}

// Fills responsibilities, returns the mean per-point log-likelihood.
inline double e_step(const std::vector<Eigen::VectorXd>& points, const GmmModel& m, Eigen::MatrixXd& resp,
                     unsigned threads) {
    const auto dens = densities(m);
    const std::size_t n = points.size();
    std::vector<double> point_ll(n);
    parallel_for(n, threads, [&](std::size_t i) {
        std::vector<double> logp(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) logp[k] = std::log(m.weights[k]) + dens[k].log_density(points[i]);
        const double lse = log_sum_exp(logp);
        point_ll[i] = lse;
        for (std::size_t k = 0; k < m.size(); ++k)
            resp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::exp(logp[k] - lse);
    });
    double ll = 0.0;
    for (double v : point_ll) ll += v;
    return ll / static_cast<double>(n);
}

inline GmmModel fit_gmm_once(const std::vector<Eigen::VectorXd>& points, const GmmOptions& opt, std::uint64_t seed) {
    const std::size_t n = points.size();
    const std::size_t k = opt.components;
    std::mt19937_64 rng(seed);
    const auto centres = kmeanspp_centres(points, k, rng);

    Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            const double d = (points[i] - points[centres[c]]).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        resp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(best)) = 1.0;
    }

    GmmModel m;
    m.weights.assign(k, 0.0);
    m.means.assign(k, Eigen::VectorXd());
    m.covariances.assign(k, Eigen::MatrixXd());
    m_step(points, resp, opt.reg, m);

    for (std::size_t it = 0; it <= opt.max_iter; ++it) {
        const double ll = e_step(points, m, resp, opt.threads);
        if (!std::isfinite(ll)) throw NumericError("EM produced a non-finite log-likelihood");
        m.log_likelihood_trace.push_back(ll);
        const std::size_t t = m.log_likelihood_trace.size();
        if (t > 1 && ll - m.log_likelihood_trace[t - 2] < opt.tol) {
            m.converged = true;
            break;
        }
        if (it == opt.max_iter) break;
        m_step(points, resp, opt.reg, m);
        ++m.iterations;
    }
    return m;
}

}  // namespace detail

/// Fit a K-component Gaussian mixture with EM.
///
/// Initialization is k-means++ seeded by `opt.seed` followed by one hard-assignment
/// M-step. EM stops once the mean log-likelihood improves by less than `tol`, or after
/// `max_iter` M-steps, in which case the model is returned with converged = false.
/// With restarts > 1, restart r uses seed + r and the best final log-likelihood wins.
inline GmmModel fit_gmm(const std::vector<Eigen::VectorXd>& points, const GmmOptions& opt = {}) {
    if (opt.components == 0) throw std::invalid_argument("fit_gmm: need at least one component");
    if (opt.restarts == 0) throw std::invalid_argument("fit_gmm: restarts must be positive");
    if (!(opt.reg >= 0.0)) throw std::invalid_argument("fit_gmm: reg must be non-negative");
    if (points.size() < opt.components)
        throw NumericError("fit_gmm: " + std::to_string(points.size()) + " points for " +
                           std::to_string(opt.components) + " components");
    const auto dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) throw NumericError("fit_gmm: points of mixed dimension");
        if (!p.allFinite()) throw NumericError("fit_gmm: non-finite point");
    }
    if (detail::count_distinct(points, opt.components) < opt.components)
        throw NumericError("fit_gmm: fewer distinct points than components");

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());
    double spread = 0.0;
    for (const auto& p : points) spread += (p - centroid).squaredNorm();
    spread /= static_cast<double>(points.size());
    if (spread <= opt.reg) throw NumericError("fit_gmm: points are identical up to the regularization floor");

    GmmModel best;
    for (std::size_t r = 0; r < opt.restarts; ++r) {
        GmmModel m = detail::fit_gmm_once(points, opt, opt.seed + r);
        m.seed = opt.seed;
        m.restart = r;
        if (r == 0 || m.log_likelihood_trace.back() > best.log_likelihood_trace.back()) best = std::move(m);
    }
    return best;
}

/// Cluster responsibilities for one point; sums to 1. Falls back to a one-hot on the
/// nearest mean when every weighted density is non-finite.
inline std::vector<double> posterior(const GmmModel& m, const Eigen::VectorXd& x) {
    if (static_cast<std::size_t>(x.size()) != m.dim()) throw NumericError("posterior: dimension mismatch");
    if (!x.allFinite()) throw NumericError("posterior: non-finite point");
    return detail::posterior_with(m, detail::densities(m), x);
}

// Argmax of the posterior; ties go to the lowest index.
inline std::size_t hard_assign(const std::vector<double>& p) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < p.size(); ++k)
        if (p[k] > p[best]) best = k;
    return best;
}

inline std::size_t hard_assign(const GmmModel& m, const Eigen::VectorXd& x) { return hard_assign(posterior(m, x)); }

}  // namespace elex
