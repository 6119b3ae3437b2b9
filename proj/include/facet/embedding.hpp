#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace facet {

// Dense feature vector. Stored as float32; all accumulations run in double.
using Embedding = std::vector<float>;

double dot(std::span<const float> a, std::span<const float> b);
double norm(std::span<const float> a);
double squared_distance(std::span<const float> a, std::span<const float> b);

// 1 - a.b / (|a| |b|), in [0,2]. Throws ZeroVector on a zero-norm input,
// DimensionMismatch on unequal dimensions.
double cosine_distance(std::span<const float> a, std::span<const float> b);

// a.b / (|a| |b|), in [-1,1]. Same error contract as cosine_distance.
double cosine_similarity(std::span<const float> a, std::span<const float> b);

// Unit-norm copy; throws ZeroVector when the norm is zero.
Embedding l2_normalize(std::span<const float> a);

// True iff every entry is finite.
bool all_finite(std::span<const float> a);

// Arithmetic mean of equal-dimension vectors, accumulated in double.
Embedding mean_of(const std::vector<Embedding>& vectors);

}  // namespace facet
