#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "chatprofiler/kmeans.hpp"
#include "oracles.hpp"

using namespace chatprofiler;

namespace {

std::vector<std::vector<double>> two_tight_groups(std::mt19937_64& gen,
                                                  std::size_t per_group,
                                                  double sigma = 0.01) {
    const auto noise = [&]() {
        return sigma * (rng::uniform_real01(gen) * 2.0 - 1.0);
    };
    std::vector<std::vector<double>> points;
    for (std::size_t i = 0; i < per_group; ++i)
        points.push_back({1.0 + noise(), 0.0 + noise()});
    for (std::size_t i = 0; i < per_group; ++i)
        points.push_back({0.0 + noise(), 1.0 + noise()});
    return points;
}

bool same_partition(const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return false;
    // compare as partitions, label permutation allowed (k = 2)
    bool direct = true, swapped = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) direct = false;
        if (a[i] == b[i]) swapped = false;
    }
    return direct || swapped;
}

}  // namespace

TEST_CASE("identical points collapse to one cluster") {
    std::vector<std::vector<double>> points(7, {0.3, 0.4});
    const auto result = cluster_embeddings(points, 1);
    CHECK(result.k == 1);
    for (std::size_t a : result.assignments) CHECK(a == 0);
}

TEST_CASE("one or two points force k = 1") {
    CHECK(cluster_embeddings({{1.0, 0.0}}, 3).k == 1);
    CHECK(cluster_embeddings({{1.0, 0.0}, {0.0, 1.0}}, 3).k == 1);
}

TEST_CASE("two tight groups are recovered exactly") {
    std::mt19937_64 gen(7);
    const auto points = two_tight_groups(gen, 10);
    const auto result = cluster_embeddings(points, 42);
    REQUIRE(result.k == 2);

    std::vector<std::vector<double>> normalized;
    for (auto p : points) normalized.push_back(l2_normalize(std::move(p)));
    const auto [best, best_cost] = oracles::best_two_partition(normalized);
    CHECK(same_partition(result.assignments, best));
}

TEST_CASE("wcss never increases with k") {
    std::mt19937_64 gen(21);
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 24; ++i)
        points.push_back({rng::uniform_real01(gen), rng::uniform_real01(gen),
                          rng::uniform_real01(gen)});
    const auto curve = kmeans_curve(points, 10, 5);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].wcss <= curve[i - 1].wcss + 1e-9);
}

TEST_CASE("kmeans at fixed k matches the exhaustive 2-partition") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<double>> points;
        const std::size_t n = 6 + gen() % 7;  // exhaustive stays cheap
        for (std::size_t i = 0; i < n; ++i)
            points.push_back({rng::uniform_real01(gen) * 4.0,
                              rng::uniform_real01(gen) * 4.0});
        const auto result = kmeans(points, 2, trial);
        const auto [best, best_cost] = oracles::best_two_partition(points);
        CHECK(result.wcss == Catch::Approx(best_cost).margin(1e-9));
    }
}

TEST_CASE("clustering is deterministic for a fixed seed") {
    std::mt19937_64 gen(13);
    const auto points = two_tight_groups(gen, 8, 0.2);
    const auto first = cluster_embeddings(points, 77);
    for (int run = 0; run < 5; ++run) {
        const auto again = cluster_embeddings(points, 77);
        CHECK(again.k == first.k);
        CHECK(again.assignments == first.assignments);
    }
    const auto other_seed = cluster_embeddings(points, 78);
    CHECK(other_seed.assignments.size() == first.assignments.size());
}

TEST_CASE("positive scaling before normalization changes nothing") {
    std::mt19937_64 gen(31);
    auto points = two_tight_groups(gen, 6, 0.05);
    const auto base = cluster_embeddings(points, 5);
    auto scaled = points;
    for (std::size_t i = 0; i < scaled.size(); ++i)
        for (double& x : scaled[i]) x *= 1.0 + static_cast<double>(i % 3);
    const auto result = cluster_embeddings(scaled, 5);
    CHECK(result.k == base.k);
    CHECK(result.assignments == base.assignments);
}

TEST_CASE("assignments always partition the input") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> points;
        const std::size_t n = 1 + gen() % 30;
        for (std::size_t i = 0; i < n; ++i)
            points.push_back({rng::uniform_real01(gen), rng::uniform_real01(gen)});
        const auto result = cluster_embeddings(points, trial);
        REQUIRE(result.assignments.size() == n);
        REQUIRE(result.k >= 1);
        for (std::size_t a : result.assignments) CHECK(a < result.k);
    }
}

TEST_CASE("zero vectors are tolerated") {
    std::vector<std::vector<double>> points = {
        {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.1}, {0.9, 0.0}};
    const auto result = cluster_embeddings(points, 9);
    CHECK(result.assignments.size() == 5);
    CHECK(result.k >= 1);
}
