#pragma once

// Test-only reference computations. Everything here is written directly from the
// textbook definitions with plain vectors and loops, and shares no numerical code
// with the library (no Eigen, no log-domain tricks, no cached norms).

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace elex::oracle {

using Vector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

inline double dot(const Vector& a, const Vector& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double cosine(const Vector& a, const Vector& b) {
    return dot(a, b) / std::sqrt(dot(a, a) * dot(b, b));
}

// Gauss-Jordan with partial pivoting; returns {inverse, determinant}.
inline std::pair<Matrix, double> invert(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (a[pivot][col] == 0.0) throw std::runtime_error("singular");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(inv[pivot], inv[col]);
            det = -det;
        }
        const double p = a[col][col];
        det *= p;
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return {inv, det};
}

inline double gaussian_density(const Vector& x, const Vector& mean, const Matrix& cov) {
    const std::size_t d = x.size();
    auto [inv, det] = invert(cov);
    Vector diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - mean[i];
    double q = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) q += diff[i] * inv[i][j] * diff[j];
    return std::exp(-0.5 * q) / std::sqrt(std::pow(2.0 * std::numbers::pi, static_cast<double>(d)) * det);
}

struct Mixture {
    Vector weights;
    std::vector<Vector> means;
    std::vector<Matrix> covs;
};

inline Vector posterior(const Mixture& m, const Vector& x) {
    Vector p(m.weights.size());
    double total = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = m.weights[k] * gaussian_density(x, m.means[k], m.covs[k]);
        total += p[k];
    }
    for (auto& v : p) v /= total;
    return p;
}

inline Vector project(const Vector& mean, const Matrix& components, const Vector& v) {
    Vector out(components.size(), 0.0);
    for (std::size_t r = 0; r < components.size(); ++r)
        for (std::size_t j = 0; j < v.size(); ++j) out[r] += components[r][j] * (v[j] - mean[j]);
    return out;
}

struct Stats {
    Vector mu, sigma;
};

inline double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

inline double s_norm(double s, double mu, double sigma) {
    const double sigma_c = 3.0;
    return clip01(((s - mu) / sigma + sigma_c) / (2.0 * sigma_c));
}

inline double s_final(double s, const Vector& p, const Stats& st) {
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * s_norm(s, st.mu[i], st.sigma[i]);
    return clip01(acc);
}

// Two-pass mean / population sd of all unordered pairs.
inline std::pair<double, double> pair_moments(const std::vector<Vector>& members) {
    std::vector<double> sims;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) sims.push_back(cosine(members[a], members[b]));
    double mean = 0;
    for (double s : sims) mean += s;
    mean /= static_cast<double>(sims.size());
    double var = 0;
    for (double s : sims) var += (s - mean) * (s - mean);
    var /= static_cast<double>(sims.size());
    return {mean, std::sqrt(var)};
}

struct Triple {
    std::string word;
    std::size_t emotion;
    std::string nearest;
    double sim;

    bool operator<(const Triple& o) const { return std::tie(word, emotion) < std::tie(o.word, o.emotion); }
};

struct SeedWord {
    std::string word;
    unsigned flags;  // bit e = emotion e
    Vector vec;
};

/// Enumerate every (candidate, seed word, emotion) triple: keep, per (candidate,
/// emotion), the seed word with the largest calibrated similarity (lexicographically
/// smaller word on ties) and emit it when the similarity exceeds theta.
inline std::vector<Triple> brute_force_expand(const std::vector<std::pair<std::string, Vector>>& candidates,
                                              const std::vector<SeedWord>& seeds, const Vector& pca_mean,
                                              const Matrix& pca_components, const Mixture& mix, const Stats& stats,
                                              double theta, std::size_t n_emotions = 8) {
    std::vector<Triple> out;
    for (const auto& [cword, cvec] : candidates) {
        const Vector p = posterior(mix, project(pca_mean, pca_components, cvec));
        for (std::size_t e = 0; e < n_emotions; ++e) {
            bool found = false;
            Triple best{cword, e, "", -1.0};
            for (const auto& s : seeds) {
                if (!((s.flags >> e) & 1u)) continue;
                const double sim = s_final(cosine(cvec, s.vec), p, stats);
                if (!found || sim > best.sim || (sim == best.sim && s.word < best.nearest)) {
                    best.nearest = s.word;
                    best.sim = sim;
                    found = true;
                }
            }
            if (found && best.sim > theta) out.push_back(best);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
/// Returns eigenpairs sorted by descending eigenvalue; eigenvectors as rows.
inline std::pair<Vector, Matrix> jacobi_eigen(Matrix a, int sweeps = 100) {
    const std::size_t n = a.size();
    Matrix v(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    Vector values;
    Matrix vectors;
    for (std::size_t i : order) {
        values.push_back(a[i][i]);
        Vector col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = v[k][i];
        vectors.push_back(col);
    }
    return {values, vectors};
}

inline Matrix sample_covariance(const std::vector<Vector>& rows) {
    const std::size_t n = rows.size(), d = rows.front().size();
    Vector mean(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) mean[j] += r[j] / static_cast<double>(n);
    Matrix c(d, Vector(d, 0.0));
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / static_cast<double>(n - 1);
    return c;
}

// Number of local maxima of a Gaussian KDE over [-1, 1], ignoring bumps below
// `min_rel` of the global maximum.
inline std::size_t kde_peak_count(const std::vector<double>& samples, double bandwidth, double min_rel = 0.01,
                                  std::size_t grid = 801) {
    std::vector<double> density(grid, 0.0);
    for (std::size_t g = 0; g < grid; ++g) {
        const double x = -1.0 + 2.0 * static_cast<double>(g) / static_cast<double>(grid - 1);
        for (double s : samples) {
            const double z = (x - s) / bandwidth;
            density[g] += std::exp(-0.5 * z * z);
        }
    }
    const double top = *std::max_element(density.begin(), density.end());
    std::size_t peaks = 0;
    for (std::size_t g = 1; g + 1 < grid; ++g)
        if (density[g] > density[g - 1] && density[g] >= density[g + 1] && density[g] > min_rel * top) ++peaks;
    return peaks;
}

}  // namespace elex::oracle
