#include "facet/hac.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <unordered_map>

#include "facet/errors.hpp"
#include "facet/io.hpp"
#include "facet/parallel.hpp"

namespace facet {

namespace {

constexpr double kTieTolerance = 1e-12;

// Condensed upper-triangular index for i < j over n items.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

struct Candidate {
    double dist;
    std::uint32_t a, b;  // positions in ascending-id order, a < b
    bool operator>(const Candidate& o) const {
        if (dist != o.dist) return dist > o.dist;
        if (a != o.a) return a > o.a;
        return b > o.b;
    }
};

using CandidateHeap =
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<Candidate>>;

double lance_williams(Linkage linkage, double dik, double djk,
                      std::size_t ni, std::size_t nj) {
    switch (linkage) {
        case Linkage::Single: return std::min(dik, djk);
        case Linkage::Complete: return std::max(dik, djk);
        case Linkage::Average:
        default: {
            const double wi = static_cast<double>(ni);
            const double wj = static_cast<double>(nj);
            return (wi * dik + wj * djk) / (wi + wj);
        }
    }
}

}  // namespace

int Clustering::label_of(std::int64_t item_id) const {
    const auto it = std::lower_bound(item_ids.begin(), item_ids.end(), item_id);
    if (it == item_ids.end() || *it != item_id)
        throw MissingLabel("item " + std::to_string(item_id) + " not in clustering");
    return labels[static_cast<std::size_t>(it - item_ids.begin())];
}

Clustering hac_cluster(const std::vector<HacItem>& items,
                       const LinkageSpec& spec, unsigned threads) {
    const std::size_t n = items.size();
    if (n == 0) throw EmptyInput("hac_cluster on no items");
    if (spec.stop == StopRule::NumClusters) {
        if (spec.num_clusters < 1 || spec.num_clusters > n)
            throw InvalidStop("num_clusters " + std::to_string(spec.num_clusters) +
                              " outside [1," + std::to_string(n) + "]");
    } else if (spec.threshold < 0.0) {
        throw InvalidStop("negative distance threshold");
    }

    // Work in ascending-id order so the merge sequence is independent of
    // input permutation.
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return items[x].id < items[y].id;
    });
    for (std::size_t i = 1; i < n; ++i)
        if (items[order[i - 1]].id == items[order[i]].id)
            throw InvalidInput("duplicate item id " +
                               std::to_string(items[order[i]].id));

    std::vector<std::int64_t> ids(n);
    std::vector<const Embedding*> vecs(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = items[order[i]].id;
        vecs[i] = &items[order[i]].embedding;
    }

    std::vector<double> dist(n >= 2 ? n * (n - 1) / 2 : 0);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dist[pair_index(i, j, n)] =
                    spec.metric == Metric::Cosine
                        ? cosine_distance(*vecs[i], *vecs[j])
                        : std::sqrt(squared_distance(*vecs[i], *vecs[j]));
    });

    std::vector<bool> active(n, true);
    std::vector<std::size_t> size(n, 1);
    // Disjoint-set by position; the representative is always the smallest
    // position (= smallest id) in the cluster.
    std::vector<std::uint32_t> parent(n);
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;

    std::vector<Candidate> initial;
    initial.reserve(dist.size());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            initial.push_back({dist[pair_index(i, j, n)], i, j});
    CandidateHeap heap(std::greater<Candidate>(), std::move(initial));

    Clustering result;
    result.item_ids = ids;
    std::size_t clusters = n;
    const std::size_t target =
        spec.stop == StopRule::NumClusters ? spec.num_clusters : 1;

    auto is_current = [&](const Candidate& c) {
        return active[c.a] && active[c.b] &&
               c.dist == dist[pair_index(c.a, c.b, n)];
    };

    while (clusters > target) {
        // Pop to the first still-valid candidate.
        Candidate best{};
        bool found = false;
        while (!heap.empty()) {
            const Candidate top = heap.top();
            heap.pop();
            if (is_current(top)) {
                best = top;
                found = true;
                break;
            }
        }
        if (!found) break;  // unreachable for a consistent matrix

        // Gather every valid candidate within the tie tolerance and keep
        // the lexicographically smallest (a,b); the rest go back.
        std::vector<Candidate> ties;
        while (!heap.empty() && heap.top().dist <= best.dist + kTieTolerance) {
            const Candidate c = heap.top();
            heap.pop();
            if (is_current(c)) ties.push_back(c);
        }
        for (const Candidate& c : ties) {
            if (c.a < best.a || (c.a == best.a && c.b < best.b)) {
                heap.push(best);
                best = c;
            } else {
                heap.push(c);
            }
        }

        if (spec.stop == StopRule::DistanceThreshold && best.dist > spec.threshold) {
            heap.push(best);
            break;
        }

        const std::uint32_t a = best.a, b = best.b;
        result.merge_trace.push_back({ids[a], ids[b], best.dist});

        for (std::uint32_t k = 0; k < n; ++k) {
            if (!active[k] || k == a || k == b) continue;
            const double dak = dist[pair_index(std::min(a, k), std::max(a, k), n)];
            const double dbk = dist[pair_index(std::min(b, k), std::max(b, k), n)];
            const double d = lance_williams(spec.linkage, dak, dbk, size[a], size[b]);
            dist[pair_index(std::min(a, k), std::max(a, k), n)] = d;
            heap.push({d, std::min(a, k), std::max(a, k)});
        }
        size[a] += size[b];
        active[b] = false;
        parent[b] = a;
        --clusters;
    }

    // Path-compress to representatives, then assign dense labels in
    // ascending representative order.
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::map<std::uint32_t, int> label_of_rep;
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t rep = find(i);
        label_of_rep.emplace(rep, 0);
    }
    int next = 0;
    for (auto& [rep, label] : label_of_rep) label = next++;
    result.labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        result.labels[i] = label_of_rep[find(i)];
    result.num_clusters = next;
    return result;
}

double squared_error(const std::vector<HacItem>& items,
                     const Clustering& clustering) {
    if (items.empty()) return 0.0;
    const std::size_t d = items.front().embedding.size();
    std::unordered_map<int, std::pair<std::vector<double>, std::size_t>> centroids;
    for (const auto& item : items) {
        auto& slot = centroids[clustering.label_of(item.id)];
        if (slot.first.empty()) slot.first.assign(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) slot.first[i] += item.embedding[i];
        slot.second += 1;
    }
    double total = 0.0;
    for (const auto& item : items) {
        const auto& slot = centroids[clustering.label_of(item.id)];
        for (std::size_t i = 0; i < d; ++i) {
            const double c = slot.first[i] / static_cast<double>(slot.second);
            const double diff = item.embedding[i] - c;
            total += diff * diff;
        }
    }
    return total;
}

void write_clustering_csv(const std::string& path, const Clustering& c) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << "item_id,cluster_id\n";
    for (std::size_t i = 0; i < c.item_ids.size(); ++i)
        f << c.item_ids[i] << ',' << c.labels[i] << '\n';
}

Clustering read_clustering_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw InvalidInput(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "item_id,cluster_id")
        throw InvalidInput(path + ": unexpected header '" + line + "'");
    std::vector<std::pair<std::int64_t, int>> rows;
    std::size_t line_no = 1;
    int max_label = -1;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw InvalidInput(path + " line " + std::to_string(line_no) +
                               ": expected 2 fields");
        std::int64_t id = 0;
        int label = 0;
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
        std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), label);
        rows.emplace_back(id, label);
        max_label = std::max(max_label, label);
    }
    std::sort(rows.begin(), rows.end());
    Clustering c;
    for (const auto& [id, label] : rows) {
        c.item_ids.push_back(id);
        c.labels.push_back(label);
    }
    c.num_clusters = max_label + 1;
    return c;
}

void write_merge_trace_csv(const std::string& path, const Clustering& c) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << "step,a,b,distance\n";
    for (std::size_t i = 0; i < c.merge_trace.size(); ++i)
        f << i << ',' << c.merge_trace[i].cluster_a << ','
          << c.merge_trace[i].cluster_b << ','
          << format_double(c.merge_trace[i].distance) << '\n';
}

}  // namespace facet
