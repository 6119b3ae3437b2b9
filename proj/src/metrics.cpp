#include "facet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "facet/errors.hpp"
#include "facet/io.hpp"
#include "facet/parallel.hpp"

namespace facet {

namespace {

inline std::uint64_t pairs_of(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

PairwiseScores pairwise_prf(
    const Clustering& pred,
    const std::unordered_map<std::int64_t, std::int64_t>& truth) {
    std::unordered_map<int, std::uint64_t> cluster_sizes;
    std::unordered_map<std::int64_t, std::uint64_t> class_sizes;
    std::map<std::pair<int, std::int64_t>, std::uint64_t> cell_sizes;

    for (std::size_t i = 0; i < pred.item_ids.size(); ++i) {
        const auto it = truth.find(pred.item_ids[i]);
        if (it == truth.end())
            throw MissingLabel("no truth class for item " +
                               std::to_string(pred.item_ids[i]));
        const int cluster = pred.labels[i];
        const std::int64_t cls = it->second;
        cluster_sizes[cluster]++;
        class_sizes[cls]++;
        cell_sizes[{cluster, cls}]++;
    }

    std::uint64_t same_cluster = 0, same_class = 0, same_both = 0;
    for (const auto& [c, n] : cluster_sizes) same_cluster += pairs_of(n);
    for (const auto& [c, n] : class_sizes) same_class += pairs_of(n);
    for (const auto& [c, n] : cell_sizes) same_both += pairs_of(n);

    PairwiseScores out;
    out.precision = same_cluster == 0
                        ? 1.0
                        : static_cast<double>(same_both) / static_cast<double>(same_cluster);
    out.recall = same_class == 0
                     ? 1.0
                     : static_cast<double>(same_both) / static_cast<double>(same_class);
    out.f1 = (out.precision + out.recall) == 0.0
                 ? 0.0
                 : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

double f_beta(double p, double r, double beta) {
    if (!(p >= 0.0 && p <= 1.0) || !(r >= 0.0 && r <= 1.0) || !(beta > 0.0))
        throw InvalidInput("f_beta domain violation");
    const double b2 = beta * beta;
    const double denom = b2 * p + r;
    return denom == 0.0 ? 0.0 : (b2 + 1.0) * p * r / denom;
}

void ScoreTable::validate() const {
    if (scores.size() != probes.size() * gallery.size())
        throw InvalidInput("score matrix shape mismatch");
    for (double s : scores)
        if (!std::isfinite(s)) throw InvalidInput("non-finite score");
    for (const auto& p : probes) {
        if (p.mated_gallery_id == kUnknown) continue;
        const bool present =
            std::any_of(gallery.begin(), gallery.end(), [&](const GalleryEntry& g) {
                return g.template_id == p.mated_gallery_id;
            });
        if (!present)
            throw InvalidInput("probe " + std::to_string(p.probe_id) +
                               " mated to absent gallery template " +
                               std::to_string(p.mated_gallery_id));
    }
}

ScoreTable score_probes(const std::vector<Template>& probes,
                        const std::vector<Template>& gallery, Fusion fusion,
                        unsigned threads) {
    if (gallery.empty()) throw EmptyInput("score_probes with empty gallery");
    ScoreTable table;
    table.probes.reserve(probes.size());
    for (const auto& p : probes) table.probes.push_back({p.template_id, kUnknown});
    table.gallery.reserve(gallery.size());
    for (const auto& g : gallery)
        table.gallery.push_back({g.template_id, g.subject_id});
    table.scores.assign(probes.size() * gallery.size(), 0.0);

    parallel_for(probes.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            for (std::size_t g = 0; g < gallery.size(); ++g) {
                double best = -2.0, sum = 0.0;
                std::size_t count = 0;
                for (const auto& pr : probes[p].representations) {
                    for (const auto& gr : gallery[g].representations) {
                        const double s = cosine_similarity(pr, gr);
                        best = std::max(best, s);
                        sum += s;
                        ++count;
                    }
                }
                table.scores[p * gallery.size() + g] =
                    fusion == Fusion::Max ? best : sum / static_cast<double>(count);
            }
        }
    });
    return table;
}

namespace {

// Index of the mated gallery entry, or npos.
std::size_t mated_index(const ScoreTable& table, std::size_t p) {
    if (table.probes[p].mated_gallery_id == kUnknown) return std::size_t(-1);
    for (std::size_t g = 0; g < table.gallery.size(); ++g)
        if (table.gallery[g].template_id == table.probes[p].mated_gallery_id)
            return g;
    return std::size_t(-1);
}

// 1 + #{g != mated : score >= mated score}; ties count as better.
int rank_of(const ScoreTable& table, std::size_t p, std::size_t mated) {
    const double ms = table.at(p, mated);
    int higher = 0;
    for (std::size_t g = 0; g < table.gallery.size(); ++g)
        if (g != mated && table.at(p, g) >= ms) ++higher;
    return 1 + higher;
}

double top1_score(const ScoreTable& table, std::size_t p) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < table.gallery.size(); ++g)
        best = std::max(best, table.at(p, g));
    return best;
}

}  // namespace

std::map<int, double> cmc(const ScoreTable& table) {
    const auto curve = cmc_curve(table);
    std::map<int, double> out;
    for (int k : kRankPoints) {
        const std::size_t idx = std::min<std::size_t>(k, curve.size()) - 1;
        out[k] = curve[idx];
    }
    return out;
}

std::vector<double> cmc_curve(const ScoreTable& table) {
    const std::size_t G = table.gallery.size();
    std::vector<std::uint64_t> at_rank(G + 1, 0);
    std::uint64_t mated_count = 0;
    for (std::size_t p = 0; p < table.probes.size(); ++p) {
        const std::size_t m = mated_index(table, p);
        if (m == std::size_t(-1)) continue;
        ++mated_count;
        at_rank[static_cast<std::size_t>(rank_of(table, p, m))]++;
    }
    if (mated_count == 0) throw NoMatedProbes("no mated probes in score table");
    std::vector<double> curve(G);
    std::uint64_t cum = 0;
    for (std::size_t k = 1; k <= G; ++k) {
        cum += at_rank[k];
        curve[k - 1] = static_cast<double>(cum) / static_cast<double>(mated_count);
    }
    return curve;
}

std::map<double, double> tpir_fpir(const ScoreTable& table) {
    std::vector<double> nonmated_top;
    struct Mated {
        double top1;
        bool mated_is_top1;
    };
    std::vector<Mated> mated;
    for (std::size_t p = 0; p < table.probes.size(); ++p) {
        const std::size_t m = mated_index(table, p);
        if (m == std::size_t(-1)) {
            nonmated_top.push_back(top1_score(table, p));
        } else {
            mated.push_back({top1_score(table, p), rank_of(table, p, m) == 1});
        }
    }
    if (mated.empty()) throw NoMatedProbes("no mated probes in score table");
    if (nonmated_top.empty())
        throw NotOpenSet("every probe is mated; open-set metrics undefined");

    std::sort(nonmated_top.begin(), nonmated_top.end(), std::greater<>());
    std::map<double, double> out;
    for (double target : kFpirTargets) {
        const std::size_t allowed = static_cast<std::size_t>(
            std::floor(target * static_cast<double>(nonmated_top.size())));
        // Accept scores strictly above the (allowed+1)-th largest non-mated
        // top-1 score; that admits at most `allowed` non-mated probes.
        const double tau = allowed >= nonmated_top.size()
                               ? -std::numeric_limits<double>::infinity()
                               : nonmated_top[allowed];
        std::uint64_t hits = 0;
        for (const auto& m : mated)
            if (m.mated_is_top1 && m.top1 > tau) ++hits;
        out[target] = static_cast<double>(hits) / static_cast<double>(mated.size());
    }
    return out;
}

IdentReport identification_report(const ScoreTable& table) {
    IdentReport r;
    r.rank_k = cmc(table);
    r.tpir_at_fpir = tpir_fpir(table);
    return r;
}

IdentReport average_reports(const std::vector<IdentReport>& reports) {
    IdentReport avg;
    if (reports.empty()) return avg;
    for (int k : kRankPoints) {
        double s = 0.0;
        for (const auto& r : reports) s += r.rank_k.at(k);
        avg.rank_k[k] = s / static_cast<double>(reports.size());
    }
    for (double t : kFpirTargets) {
        double s = 0.0;
        for (const auto& r : reports) s += r.tpir_at_fpir.at(t);
        avg.tpir_at_fpir[t] = s / static_cast<double>(reports.size());
    }
    return avg;
}

void write_ident_report_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, IdentReport>>& rows) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << "gallery,rank1,rank5,rank10,rank25,rank50,tpir_fpir_0.1,tpir_fpir_0.01\n";
    for (const auto& [name, r] : rows) {
        f << name;
        for (int k : kRankPoints) f << ',' << format_double(r.rank_k.at(k));
        for (double t : kFpirTargets) f << ',' << format_double(r.tpir_at_fpir.at(t));
        f << '\n';
    }
}

void write_cmc_curve_csv(const std::string& path,
                         const std::vector<double>& curve) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << "k,rate\n";
    for (std::size_t k = 0; k < curve.size(); ++k)
        f << (k + 1) << ',' << format_double(curve[k]) << '\n';
}

}  // namespace facet
