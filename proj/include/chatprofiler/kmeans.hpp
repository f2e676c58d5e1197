#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Deterministic sampling helpers
//
// std::uniform_*_distribution is not specified bit-for-bit across standard
// libraries, so sampling is done directly on the mt19937_64 stream.
// ---------------------------------------------------------------------------

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ splitmix64(salt));
}

/// Uniform index in [0, n) by rejection sampling.
inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

/// Uniform double in [0, 1) with 53 bits of precision.
inline double uniform_real01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace rng

// ---------------------------------------------------------------------------
// k-means with seeded k-means++ initialization
// ---------------------------------------------------------------------------

struct KMeansResult {
    std::vector<std::size_t> assignments;
    std::vector<std::vector<double>> centers;
    double wcss = 0.0;
};

namespace detail {

inline double squared_distance(const std::vector<double>& a,
                               const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

inline std::size_t nearest_center(const std::vector<double>& point,
                                  const std::vector<std::vector<double>>& centers) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squared_distance(point, centers[c]);
        if (d < best_dist) {
            best_dist = d;
            best = c;
        }
    }
    return best;
}

inline std::vector<std::vector<double>> plus_plus_init(
    const std::vector<std::vector<double>>& points, std::size_t k,
    std::mt19937_64& gen) {
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    centers.push_back(points[rng::uniform_index(gen, points.size())]);
    std::vector<double> dist2(points.size());
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            dist2[i] = squared_distance(points[i], centers[0]);
            for (std::size_t c = 1; c < centers.size(); ++c)
                dist2[i] = std::min(dist2[i], squared_distance(points[i], centers[c]));
            total += dist2[i];
        }
        if (total <= 0.0) {
            centers.push_back(points[rng::uniform_index(gen, points.size())]);
            continue;
        }
        const double target = rng::uniform_real01(gen) * total;
        double cum = 0.0;
        std::size_t chosen = points.size() - 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            cum += dist2[i];
            if (cum >= target) {
                chosen = i;
                break;
            }
        }
        centers.push_back(points[chosen]);
    }
    return centers;
}

/// Lloyd iterations from the given centers until assignments stabilize.
inline KMeansResult lloyd(const std::vector<std::vector<double>>& points,
                          std::vector<std::vector<double>> centers,
                          int max_iterations = 100) {
    const std::size_t n = points.size();
    const std::size_t k = centers.size();
    const std::size_t dim = points[0].size();
    KMeansResult result;
    result.assignments.assign(n, 0);
    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = iter == 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = nearest_center(points[i], centers);
            if (c != result.assignments[i]) {
                result.assignments[i] = c;
                changed = true;
            }
        }
        // refill any emptied cluster with the point farthest from its center
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t a : result.assignments) ++sizes[a];
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            std::size_t farthest = 0;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[result.assignments[i]] <= 1) continue;
                const double d =
                    squared_distance(points[i], centers[result.assignments[i]]);
                if (d > far_dist) {
                    far_dist = d;
                    farthest = i;
                }
            }
            --sizes[result.assignments[farthest]];
            result.assignments[farthest] = c;
            ++sizes[c];
            changed = true;
        }
        if (!changed) break;
        for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d)
                centers[result.assignments[i]][d] += points[i][d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) continue;
            for (std::size_t d = 0; d < dim; ++d)
                centers[c][d] /= static_cast<double>(sizes[c]);
        }
    }
    result.centers = std::move(centers);
    result.wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        result.wcss += squared_distance(points[i], result.centers[result.assignments[i]]);
    return result;
}

}  // namespace detail

/// Best of `restarts` seeded k-means++ runs, plus (when provided) one run
/// grown from a previous solution by adding its farthest point as a center —
/// that start guarantees WCSS(k) <= WCSS(k-1).
inline KMeansResult kmeans(const std::vector<std::vector<double>>& points,
                           std::size_t k, std::uint64_t seed, int restarts = 10,
                           const KMeansResult* previous = nullptr) {
    KMeansResult best;
    best.wcss = std::numeric_limits<double>::infinity();
    k = std::min(k, points.size());
    if (k == 0) return best;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 gen(rng::mix_seed(seed, static_cast<std::uint64_t>(r)));
        auto centers = detail::plus_plus_init(points, k, gen);
        auto result = detail::lloyd(points, std::move(centers));
        if (result.wcss < best.wcss) best = std::move(result);
    }
    if (previous != nullptr && previous->centers.size() == k - 1 && k >= 2) {
        auto centers = previous->centers;
        std::size_t farthest = 0;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = detail::squared_distance(
                points[i], previous->centers[previous->assignments[i]]);
            if (d > far_dist) {
                far_dist = d;
                farthest = i;
            }
        }
        centers.push_back(points[farthest]);
        auto result = detail::lloyd(points, std::move(centers));
        if (result.wcss < best.wcss) best = std::move(result);
    }
    return best;
}

/// WCSS curve over k = 1..k_max (inclusive), each entry the best restart.
inline std::vector<KMeansResult> kmeans_curve(
    const std::vector<std::vector<double>>& points, std::size_t k_max,
    std::uint64_t seed, int restarts = 10) {
    std::vector<KMeansResult> curve;
    curve.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const KMeansResult* prev = curve.empty() ? nullptr : &curve.back();
        curve.push_back(kmeans(points, k, rng::mix_seed(seed, k), restarts, prev));
    }
    return curve;
}

/// Elbow rule: the k in 2..k_max-1 maximizing the discrete second difference
/// of the WCSS curve (ties to the smallest k). Degenerate curves fall back
/// to k = 1.
inline std::size_t elbow_k(const std::vector<double>& wcss) {
    const std::size_t k_max = wcss.size();
    if (k_max == 0) return 1;
    if (wcss[0] <= 1e-12) return 1;  // a single point already explains everything
    if (k_max < 3) return 1;
    std::size_t best_k = 1;
    double best_curvature = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 2; k + 1 <= k_max; ++k) {
        // indices are 1-based ks stored at wcss[k-1]
        const double curvature = wcss[k - 2] - 2.0 * wcss[k - 1] + wcss[k];
        if (curvature > best_curvature) {
            best_curvature = curvature;
            best_k = k;
        }
    }
    return best_k;
}

struct ClusterResult {
    std::vector<std::size_t> assignments;
    std::size_t k = 1;
};

/// L2 normalization; the zero vector is left unchanged.
inline std::vector<double> l2_normalize(std::vector<double> v) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (norm2 <= 0.0) return v;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
    return v;
}

/// Clusters unit-normalized vectors with k chosen by the elbow rule over
/// k = 1..min(10, n). Euclidean k-means on the unit sphere orders pairs the
/// same way cosine similarity does.
inline ClusterResult cluster_embeddings(std::vector<std::vector<double>> points,
                                        std::uint64_t seed) {
    ClusterResult out;
    const std::size_t n = points.size();
    if (n == 0) return out;
    for (auto& p : points) p = l2_normalize(std::move(p));
    if (n <= 2) {
        out.assignments.assign(n, 0);
        out.k = 1;
        return out;
    }
    const std::size_t k_max = std::min<std::size_t>(10, n);
    const auto curve = kmeans_curve(points, k_max, seed);
    std::vector<double> wcss;
    wcss.reserve(curve.size());
    for (const auto& r : curve) wcss.push_back(r.wcss);
    out.k = elbow_k(wcss);
    out.assignments = curve[out.k - 1].assignments;
    return out;
}

}  // namespace chatprofiler
