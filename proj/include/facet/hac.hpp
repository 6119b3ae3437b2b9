#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facet/embedding.hpp"

namespace facet {

enum class Linkage { Single, Complete, Average };
enum class Metric { Cosine, Euclidean };
enum class StopRule { NumClusters, DistanceThreshold };

struct LinkageSpec {
    Linkage linkage = Linkage::Average;
    Metric metric = Metric::Cosine;
    StopRule stop = StopRule::NumClusters;
    std::size_t num_clusters = 1;   // when stop == NumClusters
    double threshold = 0.0;         // when stop == DistanceThreshold
};

struct MergeStep {
    std::int64_t cluster_a = 0;  // cluster id = smallest item id in the cluster
    std::int64_t cluster_b = 0;  // a < b; the merged cluster keeps id a
    double distance = 0.0;
};

struct Clustering {
    std::vector<std::int64_t> item_ids;  // ascending
    std::vector<int> labels;             // parallel to item_ids, dense [0,num_clusters)
    int num_clusters = 0;
    std::vector<MergeStep> merge_trace;

    int label_of(std::int64_t item_id) const;
};

struct HacItem {
    std::int64_t id = 0;
    Embedding embedding;
};

// Bottom-up agglomeration: every item starts as its own cluster and the
// closest pair under the linkage rule is merged until the stop rule holds.
// Inter-cluster distances are maintained with the Lance-Williams recurrence
// over a condensed matrix plus a lazy min-heap.
//
// Determinism: items are processed in ascending id order, and among
// candidate merges within 1e-12 of the minimum the pair with the
// lexicographically smallest (min id, max id) wins. Cluster ids in the
// trace are the smallest item id of each cluster. Final labels are dense,
// ordered by each cluster's smallest item id.
Clustering hac_cluster(const std::vector<HacItem>& items,
                       const LinkageSpec& spec, unsigned threads = 1);

// Eq-style squared-error criterion: sum over clusters of squared Euclidean
// distance from each member to its cluster centroid.
double squared_error(const std::vector<HacItem>& items,
                     const Clustering& clustering);

// CSV: "item_id,cluster_id" rows.
void write_clustering_csv(const std::string& path, const Clustering& c);
Clustering read_clustering_csv(const std::string& path);

// CSV: "step,a,b,distance" rows.
void write_merge_trace_csv(const std::string& path, const Clustering& c);

}  // namespace facet
