#pragma once

#include <cstdint>
#include <vector>

#include "facet/embedding.hpp"
#include "facet/rng.hpp"

namespace facet {

struct ForestParams {
    std::size_t num_trees = 2;
    std::size_t max_comparisons = 100;
};

struct NeighborResult {
    std::uint32_t point = 0;
    double squared_distance = 0.0;
};

// Randomized k-d tree ensemble over a fixed point set. Each node splits on
// a dimension drawn uniformly from the 5 highest-variance dimensions of its
// subset (all dimensions when d < 5) at the median value. Queries run
// best-bin-first across all trees through one shared priority queue with a
// hard cap on distance evaluations; with a budget >= n the scan degenerates
// to an exhaustive search, so the result is bit-identical to brute force
// (ties broken by lower point index).
//
// A built forest is immutable; concurrent searches are safe because all
// per-query scratch lives in the caller's SearchBuffer (or a local one).
class KdForest {
public:
    KdForest(const std::vector<Embedding>& points, std::size_t num_trees,
             std::uint64_t rng_seed);

    struct SearchBuffer {
        std::vector<std::uint32_t> visit_mark;
        std::uint32_t epoch = 0;
    };

    NeighborResult search(std::span<const float> query,
                          std::size_t max_comparisons) const;
    NeighborResult search(std::span<const float> query,
                          std::size_t max_comparisons, SearchBuffer& buf) const;

    std::size_t size() const { return count_; }
    std::size_t dimension() const { return dim_; }
    std::size_t num_trees() const { return trees_.size(); }

private:
    struct Node {
        std::int32_t split_dim = -1;  // -1 marks a leaf
        float split_value = 0.0f;
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        std::uint32_t begin = 0;  // leaf: range into the tree's index array
        std::uint32_t end = 0;
    };

    struct Tree {
        std::vector<Node> nodes;
        std::vector<std::uint32_t> order;  // point indices grouped by leaf
    };

    std::uint32_t build_node(Tree& tree, std::uint32_t begin, std::uint32_t end,
                             Rng& rng);
    std::span<const float> point(std::uint32_t i) const {
        return {data_.data() + static_cast<std::size_t>(i) * dim_, dim_};
    }

    std::size_t count_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> data_;  // row-major copy of the indexed points
    std::vector<Tree> trees_;
};

// Brute-force nearest neighbor, ties by lower index. The reference scan
// the forest must match when the budget covers every point.
NeighborResult brute_force_nn(const std::vector<Embedding>& points,
                              std::span<const float> query);

}  // namespace facet
