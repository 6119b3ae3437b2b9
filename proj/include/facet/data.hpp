#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facet/embedding.hpp"

namespace facet {

// Sentinel for absent ids and attribute values ("UNKNOWN" in the CSV
// encoding, written as an empty field).
inline constexpr std::int64_t kUnknown = -1;

enum class Gender { Unknown, Male, Female };

enum class Modality { Image, VideoFrame };

struct AttributeRecord {
    Gender gender = Gender::Unknown;
    std::int64_t skin_tone = kUnknown;  // bucket 1..6 or kUnknown
};

// One media item's feature vector plus its grouping metadata. All frames of
// a video share a media_id; all media of one enrollment share a template_id.
struct Sample {
    std::int64_t sample_id = 0;
    std::int64_t subject_id = kUnknown;
    std::int64_t template_id = 0;
    std::int64_t media_id = 0;
    Modality modality = Modality::Image;
    AttributeRecord attributes;
    Embedding embedding;
};

// Aggregated representation of one enrollment: a single vector for mean
// aggregation, k vectors for cluster aggregation.
struct Template {
    std::int64_t template_id = 0;
    std::int64_t subject_id = kUnknown;
    std::vector<Embedding> representations;
};

// Template plus the attributes it inherited from its samples.
struct TemplateRecord {
    Template tpl;
    AttributeRecord attributes;
};

struct Dataset {
    std::vector<Sample> samples;
    std::size_t dimension = 0;
    std::string provenance;  // config digest of the producing run
};

// Two-stage mean: frames are averaged within each media_id, then the
// per-media means are averaged with equal weight per media. All samples
// must share one template_id and one dimension.
Embedding media_average(const std::vector<Sample>& samples);

// Media-averaged template per template_id, ordered by ascending id.
// Attributes are taken from the group's first sample (in sample order).
// When renormalize is set each representation is scaled to unit norm.
std::vector<TemplateRecord> build_templates(const Dataset& dataset,
                                            bool renormalize = false);

// Referential integrity: consistent dimension, finite entries, unique
// sample ids, and template/media grouping (a media_id never spans two
// template_ids). Throws on violation.
void validate_dataset(const Dataset& dataset);

}  // namespace facet
