#include "facet/embedding.hpp"

#include <cmath>

#include "facet/errors.hpp"

namespace facet {

namespace {

void check_dims(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("vector dimensions differ: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    }
}

}  // namespace

double dot(std::span<const float> a, std::span<const float> b) {
    check_dims(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
}

double norm(std::span<const float> a) {
    double acc = 0.0;
    for (float v : a) acc += static_cast<double>(v) * static_cast<double>(v);
    return std::sqrt(acc);
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
    check_dims(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        acc += d * d;
    }
    return acc;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    check_dims(a, b);
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        throw ZeroVector("cosine on zero-norm vector");
    return dot(a, b) / (na * nb);
}

double cosine_distance(std::span<const float> a, std::span<const float> b) {
    return 1.0 - cosine_similarity(a, b);
}

Embedding l2_normalize(std::span<const float> a) {
    const double n = norm(a);
    if (n == 0.0) throw ZeroVector("normalize of zero-norm vector");
    Embedding out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<float>(static_cast<double>(a[i]) / n);
    return out;
}

bool all_finite(std::span<const float> a) {
    for (float v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

Embedding mean_of(const std::vector<Embedding>& vectors) {
    if (vectors.empty()) throw EmptyInput("mean of no vectors");
    const std::size_t d = vectors.front().size();
    std::vector<double> acc(d, 0.0);
    for (const auto& v : vectors) {
        if (v.size() != d)
            throw DimensionMismatch("mean over mixed dimensions");
        for (std::size_t i = 0; i < d; ++i) acc[i] += v[i];
    }
    Embedding out(d);
    for (std::size_t i = 0; i < d; ++i)
        out[i] = static_cast<float>(acc[i] / static_cast<double>(vectors.size()));
    return out;
}

}  // namespace facet
