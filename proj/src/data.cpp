#include "facet/data.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "facet/errors.hpp"

namespace facet {

Embedding media_average(const std::vector<Sample>& samples) {
    if (samples.empty()) throw EmptyTemplate("media_average of no samples");
    const std::size_t d = samples.front().embedding.size();
    const std::int64_t tid = samples.front().template_id;
    for (const auto& s : samples) {
        if (s.embedding.size() != d)
            throw DimensionMismatch("sample " + std::to_string(s.sample_id) +
                                    " has dimension " +
                                    std::to_string(s.embedding.size()) +
                                    ", expected " + std::to_string(d));
        if (s.template_id != tid)
            throw InvalidInput("media_average across template ids " +
                               std::to_string(tid) + " and " +
                               std::to_string(s.template_id));
    }

    // Per-media sums keyed by media_id; map keeps media order deterministic.
    std::map<std::int64_t, std::pair<std::vector<double>, std::size_t>> per_media;
    for (const auto& s : samples) {
        auto& slot = per_media[s.media_id];
        if (slot.first.empty()) slot.first.assign(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) slot.first[i] += s.embedding[i];
        slot.second += 1;
    }

    std::vector<double> acc(d, 0.0);
    for (const auto& [media_id, slot] : per_media) {
        (void)media_id;
        for (std::size_t i = 0; i < d; ++i)
            acc[i] += slot.first[i] / static_cast<double>(slot.second);
    }
    Embedding out(d);
    const double m = static_cast<double>(per_media.size());
    for (std::size_t i = 0; i < d; ++i)
        out[i] = static_cast<float>(acc[i] / m);
    return out;
}

std::vector<TemplateRecord> build_templates(const Dataset& dataset,
                                            bool renormalize) {
    std::map<std::int64_t, std::vector<Sample>> groups;
    for (const auto& s : dataset.samples) groups[s.template_id].push_back(s);

    std::vector<TemplateRecord> out;
    out.reserve(groups.size());
    for (auto& [tid, group] : groups) {
        TemplateRecord rec;
        rec.tpl.template_id = tid;
        rec.tpl.subject_id = group.front().subject_id;
        rec.attributes = group.front().attributes;
        Embedding avg = media_average(group);
        rec.tpl.representations.push_back(renormalize ? l2_normalize(avg)
                                                      : std::move(avg));
        out.push_back(std::move(rec));
    }
    return out;
}

void validate_dataset(const Dataset& dataset) {
    std::unordered_set<std::int64_t> seen_samples;
    std::unordered_map<std::int64_t, std::int64_t> media_owner;
    for (const auto& s : dataset.samples) {
        if (s.embedding.size() != dataset.dimension)
            throw DimensionMismatch("sample " + std::to_string(s.sample_id) +
                                    " dimension " +
                                    std::to_string(s.embedding.size()) +
                                    " != dataset dimension " +
                                    std::to_string(dataset.dimension));
        if (!all_finite(s.embedding))
            throw BadFeature("sample " + std::to_string(s.sample_id) +
                             " has a non-finite entry");
        if (!seen_samples.insert(s.sample_id).second)
            throw InvalidInput("duplicate sample_id " +
                               std::to_string(s.sample_id));
        auto [it, inserted] = media_owner.emplace(s.media_id, s.template_id);
        if (!inserted && it->second != s.template_id)
            throw InvalidInput("media_id " + std::to_string(s.media_id) +
                               " spans template_ids " +
                               std::to_string(it->second) + " and " +
                               std::to_string(s.template_id));
    }
}

}  // namespace facet
