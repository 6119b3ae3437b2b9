#include "facet/partition.hpp"

#include <algorithm>
#include <set>

#include "facet/errors.hpp"

namespace facet {

namespace {

bool has_value(const AttributeRecord& attrs, AttributeKey key) {
    switch (key) {
        case AttributeKey::Gender: return attrs.gender != Gender::Unknown;
        case AttributeKey::SkinTone: return attrs.skin_tone != kUnknown;
    }
    return false;
}

std::string value_label(const AttributeRecord& attrs, AttributeKey key) {
    switch (key) {
        case AttributeKey::Gender:
            return attrs.gender == Gender::Male ? "male" : "female";
        case AttributeKey::SkinTone:
            return "skin=" + std::to_string(attrs.skin_tone);
    }
    return "";
}

}  // namespace

std::string attribute_key_name(AttributeKey key) {
    return key == AttributeKey::Gender ? "gender" : "skin_tone";
}

PartitionScheme parse_partition_scheme(const std::string& comma_list) {
    PartitionScheme scheme;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        AttributeKey key;
        if (cur == "gender") {
            key = AttributeKey::Gender;
        } else if (cur == "skin_tone") {
            key = AttributeKey::SkinTone;
        } else {
            throw InvalidInput("unknown partition attribute '" + cur + "'");
        }
        if (std::find(scheme.keys.begin(), scheme.keys.end(), key) !=
            scheme.keys.end())
            throw InvalidInput("duplicate partition attribute '" + cur + "'");
        scheme.keys.push_back(key);
        cur.clear();
    };
    for (char c : comma_list) {
        if (c == ',') {
            flush();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    flush();
    if (scheme.keys.empty()) throw InvalidInput("empty partition scheme");
    return scheme;
}

Partitioned partition_templates(const std::vector<TemplateRecord>& templates,
                                const PartitionScheme& scheme) {
    if (scheme.keys.empty()) throw InvalidInput("empty partition scheme");
    Partitioned out;
    for (std::size_t i = 0; i < templates.size(); ++i) {
        const auto& attrs = templates[i].attributes;
        bool known = true;
        std::string label;
        for (const AttributeKey key : scheme.keys) {
            if (!has_value(attrs, key)) {
                known = false;
                break;
            }
            if (!label.empty()) label += '|';
            label += value_label(attrs, key);
        }
        if (known) {
            out.subsets[label].push_back(i);
        } else {
            out.skipped.push_back(i);
        }
    }
    return out;
}

namespace {

std::size_t distinct_subjects(const std::vector<TemplateRecord>& templates,
                              const std::vector<std::size_t>& subset) {
    std::set<std::int64_t> subjects;
    for (std::size_t i : subset) subjects.insert(templates[i].tpl.subject_id);
    return subjects.size();
}

// Largest-remainder apportionment of global_k over subsets, in label order;
// every subset gets at least 1.
std::map<std::string, std::size_t> proportional_split(
    const std::map<std::string, std::vector<std::size_t>>& subsets,
    std::size_t global_k) {
    std::size_t total = 0;
    for (const auto& [label, members] : subsets) total += members.size();
    std::map<std::string, std::size_t> out;
    std::vector<std::pair<double, std::string>> remainders;
    std::size_t assigned = 0;
    for (const auto& [label, members] : subsets) {
        const double exact = static_cast<double>(global_k) *
                             static_cast<double>(members.size()) /
                             static_cast<double>(total);
        std::size_t base = static_cast<std::size_t>(exact);
        if (base == 0) base = 1;
        out[label] = base;
        assigned += base;
        remainders.emplace_back(exact - static_cast<double>(base), label);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::size_t i = 0;
    while (assigned < global_k && !remainders.empty()) {
        out[remainders[i % remainders.size()].second]++;
        ++assigned;
        ++i;
    }
    return out;
}

}  // namespace

PartitionedClustering cluster_partitioned(
    const std::vector<TemplateRecord>& templates, const Partitioned& parts,
    const LinkageSpec& spec, KPolicy policy, std::size_t global_k,
    unsigned threads) {
    if (policy == KPolicy::Proportional && global_k == 0)
        throw InvalidInput("Proportional k policy needs global_k >= 1");

    std::map<std::string, std::size_t> ks;
    if (policy == KPolicy::Proportional)
        ks = proportional_split(parts.subsets, global_k);

    PartitionedClustering out;
    int offset = 0;
    for (const auto& [label, members] : parts.subsets) {
        std::vector<HacItem> items;
        items.reserve(members.size());
        for (std::size_t i : members)
            items.push_back({templates[i].tpl.template_id,
                             templates[i].tpl.representations.front()});

        std::size_t k = policy == KPolicy::GroundTruth
                            ? distinct_subjects(templates, members)
                            : ks[label];
        if (k > members.size()) {
            out.warnings.push_back("partition '" + label + "': K " +
                                   std::to_string(k) + " clipped to subset size " +
                                   std::to_string(members.size()));
            k = members.size();
        }
        LinkageSpec sub = spec;
        sub.stop = StopRule::NumClusters;
        sub.num_clusters = k;
        Clustering c = hac_cluster(items, sub, threads);
        for (std::size_t i = 0; i < c.item_ids.size(); ++i) {
            out.combined.item_ids.push_back(c.item_ids[i]);
            out.combined.labels.push_back(c.labels[i] + offset);
        }
        offset += c.num_clusters;
        out.per_partition.emplace(label, std::move(c));
    }
    out.combined.num_clusters = offset;

    // Re-sort combined rows by item id; labels stay attached.
    std::vector<std::size_t> order(out.combined.item_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.combined.item_ids[a] < out.combined.item_ids[b];
    });
    std::vector<std::int64_t> ids(order.size());
    std::vector<int> labels(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        ids[i] = out.combined.item_ids[order[i]];
        labels[i] = out.combined.labels[order[i]];
    }
    out.combined.item_ids = std::move(ids);
    out.combined.labels = std::move(labels);

    for (std::size_t i : parts.skipped)
        out.skipped_ids.push_back(templates[i].tpl.template_id);
    return out;
}

}  // namespace facet
