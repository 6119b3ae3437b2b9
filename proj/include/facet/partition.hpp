#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "facet/data.hpp"
#include "facet/hac.hpp"

namespace facet {

enum class AttributeKey { Gender, SkinTone };

// Ordered attribute keys; templates missing a value for any key are
// excluded from partitioned runs and reported as skipped.
struct PartitionScheme {
    std::vector<AttributeKey> keys;
};

PartitionScheme parse_partition_scheme(const std::string& comma_list);
std::string attribute_key_name(AttributeKey key);

enum class KPolicy {
    GroundTruth,   // distinct subject count per subset
    Proportional,  // split a global K by subset size
};

struct Partitioned {
    // label -> template indices into the input vector; labels are the
    // joined attribute values, e.g. "male" or "male|skin=3".
    std::map<std::string, std::vector<std::size_t>> subsets;
    std::vector<std::size_t> skipped;  // UNKNOWN on some key
};

Partitioned partition_templates(const std::vector<TemplateRecord>& templates,
                                const PartitionScheme& scheme);

struct PartitionedClustering {
    std::map<std::string, Clustering> per_partition;
    Clustering combined;  // globally unique cluster ids, offset per partition
    std::vector<std::int64_t> skipped_ids;
    std::vector<std::string> warnings;  // K clipped to subset size etc.
};

// Clusters each subset independently with hac_cluster; combined labels are
// offset in partition-label order so clusters never span partitions.
// GroundTruth resolves K from distinct subject ids per subset; Proportional
// splits global_k by subset size (largest remainder, each subset >= 1).
PartitionedClustering cluster_partitioned(
    const std::vector<TemplateRecord>& templates, const Partitioned& parts,
    const LinkageSpec& spec, KPolicy policy, std::size_t global_k = 0,
    unsigned threads = 1);

}  // namespace facet
