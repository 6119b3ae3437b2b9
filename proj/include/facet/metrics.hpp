#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "facet/data.hpp"
#include "facet/hac.hpp"

namespace facet {

struct PairwiseScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Pairwise clustering quality over all item pairs. Conventions: with no
// same-cluster pairs precision is 1 (no claims made); with no same-class
// pairs recall is 1.
PairwiseScores pairwise_prf(const Clustering& pred,
                            const std::unordered_map<std::int64_t, std::int64_t>& truth);

// (beta^2+1) p r / (beta^2 p + r); 0 when the denominator is 0.
double f_beta(double p, double r, double beta);

struct ProbeEntry {
    std::int64_t probe_id = 0;
    std::int64_t mated_gallery_id = kUnknown;  // kUnknown -> non-mated probe
};

struct GalleryEntry {
    std::int64_t template_id = 0;
    std::int64_t subject_id = kUnknown;
};

// Dense probe x gallery similarity matrix; higher means more similar.
struct ScoreTable {
    std::vector<ProbeEntry> probes;
    std::vector<GalleryEntry> gallery;
    std::vector<double> scores;  // row-major, probes.size() * gallery.size()

    double at(std::size_t p, std::size_t g) const {
        return scores[p * gallery.size() + g];
    }
    void validate() const;
};

enum class Fusion { Max, Mean };

// scores[p][g] = fusion over representation pairs of cosine similarity.
// With single-representation templates on both sides this is plain cosine
// similarity; MAX fusion keeps per-mode matching for multi-vector probes.
ScoreTable score_probes(const std::vector<Template>& probes,
                        const std::vector<Template>& gallery, Fusion fusion,
                        unsigned threads = 1);

inline constexpr int kRankPoints[] = {1, 5, 10, 25, 50};
inline constexpr double kFpirTargets[] = {0.1, 0.01};

struct IdentReport {
    std::map<int, double> rank_k;             // k in {1,5,10,25,50}
    std::map<double, double> tpir_at_fpir;    // targets {0.1, 0.01}
};

// Rank of a mated probe: 1 + number of other gallery entries whose score is
// >= the mated score (ties count against us). Only mated probes enter the
// CMC; throws NoMatedProbes when there are none.
std::map<int, double> cmc(const ScoreTable& table);

// Full curve: rate at every rank 1..gallery size.
std::vector<double> cmc_curve(const ScoreTable& table);

// Open-set operating points. For each FPIR target, the threshold admits at
// most floor(target * #non-mated) non-mated top-1 scores; TPIR counts mated
// probes whose top-1 entry is the mated template with a score above it.
// Throws NotOpenSet without non-mated probes, NoMatedProbes without mated.
std::map<double, double> tpir_fpir(const ScoreTable& table);

IdentReport identification_report(const ScoreTable& table);

// Element-wise mean of per-gallery reports (the "Average" row).
IdentReport average_reports(const std::vector<IdentReport>& reports);

// CSV layout: one row per gallery plus an average row, columns
// rank1..rank50, tpir at 0.1 and 0.01.
void write_ident_report_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, IdentReport>>& rows);

// CSV "k,rate" points for plotting.
void write_cmc_curve_csv(const std::string& path,
                         const std::vector<double>& curve);

}  // namespace facet
