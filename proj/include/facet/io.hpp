#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facet/data.hpp"

namespace facet {

// FEMB embedding file: magic "FEMB", little-endian u32 version=1, u32 dim,
// u64 count, then count*dim float32 little-endian, row-major. Row order is
// the metadata CSV order. Encoding is byte-explicit, so files round-trip
// bit-identically on any host.
void write_embeddings(const std::string& path,
                      const std::vector<Embedding>& rows);
std::vector<Embedding> read_embeddings(const std::string& path);

// Metadata CSV with header
//   sample_id,subject_id,template_id,media_id,modality,gender,skin_tone
// UNKNOWN values are written as empty fields; modality is image|frame,
// gender is male|female.
void write_metadata(const std::string& path,
                    const std::vector<Sample>& samples);
// Parses metadata only; embeddings stay empty.
std::vector<Sample> read_metadata(const std::string& path);

void save_dataset(const Dataset& dataset, const std::string& embedding_path,
                  const std::string& metadata_path);
Dataset load_dataset(const std::string& embedding_path,
                     const std::string& metadata_path);

// Shortest round-trip decimal form (std::to_chars), so re-reading a CSV
// reproduces the exact double.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace facet
