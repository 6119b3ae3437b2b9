#include "facet/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "facet/errors.hpp"

namespace facet {

namespace {

constexpr char kMagic[4] = {'F', 'E', 'M', 'B'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string gender_token(Gender g) {
    switch (g) {
        case Gender::Male: return "male";
        case Gender::Female: return "female";
        default: return "";
    }
}

Gender parse_gender(const std::string& tok, std::size_t line_no) {
    if (tok.empty()) return Gender::Unknown;
    if (tok == "male") return Gender::Male;
    if (tok == "female") return Gender::Female;
    throw InvalidInput("metadata line " + std::to_string(line_no) +
                       ": bad gender '" + tok + "'");
}

std::int64_t parse_i64(const std::string& tok, std::size_t line_no,
                       const char* field) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InvalidInput("metadata line " + std::to_string(line_no) +
                           ": bad " + std::string(field) + " '" + tok + "'");
    return v;
}

}  // namespace

void write_embeddings(const std::string& path,
                      const std::vector<Embedding>& rows) {
    const std::size_t dim = rows.empty() ? 0 : rows.front().size();
    std::string out;
    out.reserve(16 + rows.size() * dim * 4);
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(dim));
    put_u64(out, static_cast<std::uint64_t>(rows.size()));
    for (const auto& row : rows) {
        if (row.size() != dim)
            throw DimensionMismatch("embedding rows have mixed dimensions");
        for (float v : row) put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

std::vector<Embedding> read_embeddings(const std::string& path) {
    const std::string raw = read_file(path);
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    if (raw.size() < 4 || std::memcmp(raw.data(), kMagic, 4) != 0)
        throw FormatError(path + ": bad magic", 0);
    if (raw.size() < 8) throw FormatError(path + ": truncated header", raw.size());
    if (get_u32(p + 4) != kVersion)
        throw FormatError(path + ": unsupported version " +
                              std::to_string(get_u32(p + 4)),
                          4);
    if (raw.size() < 20) throw FormatError(path + ": truncated header", raw.size());
    const std::uint32_t dim = get_u32(p + 8);
    const std::uint64_t count = get_u64(p + 12);
    const std::uint64_t need = 20u + count * dim * 4u;
    if (raw.size() < need)
        throw FormatError(path + ": expected " + std::to_string(count) +
                              " rows of dim " + std::to_string(dim) +
                              ", file ends early",
                          raw.size());
    if (raw.size() > need)
        throw FormatError(path + ": trailing bytes after " +
                              std::to_string(count) + " rows",
                          need);

    std::vector<Embedding> rows(count, Embedding(dim));
    std::size_t at = 20;
    for (auto& row : rows)
        for (auto& v : row) {
            v = std::bit_cast<float>(get_u32(p + at));
            at += 4;
        }
    return rows;
}

void write_metadata(const std::string& path,
                    const std::vector<Sample>& samples) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path);
    f << "sample_id,subject_id,template_id,media_id,modality,gender,skin_tone\n";
    for (const auto& s : samples) {
        f << s.sample_id << ',';
        if (s.subject_id != kUnknown) f << s.subject_id;
        f << ',' << s.template_id << ',' << s.media_id << ','
          << (s.modality == Modality::Image ? "image" : "frame") << ','
          << gender_token(s.attributes.gender) << ',';
        if (s.attributes.skin_tone != kUnknown) f << s.attributes.skin_tone;
        f << '\n';
    }
}

std::vector<Sample> read_metadata(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line))
        throw InvalidInput(path + ": empty metadata file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "sample_id,subject_id,template_id,media_id,modality,gender,skin_tone")
        throw InvalidInput(path + ": unexpected metadata header '" + line + "'");

    std::vector<Sample> samples;
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7)
            throw InvalidInput(path + " line " + std::to_string(line_no) +
                               ": expected 7 fields, got " +
                               std::to_string(fields.size()));
        Sample s;
        s.sample_id = parse_i64(fields[0], line_no, "sample_id");
        s.subject_id = fields[1].empty() ? kUnknown
                                         : parse_i64(fields[1], line_no, "subject_id");
        s.template_id = parse_i64(fields[2], line_no, "template_id");
        s.media_id = parse_i64(fields[3], line_no, "media_id");
        if (fields[4] == "image") {
            s.modality = Modality::Image;
        } else if (fields[4] == "frame") {
            s.modality = Modality::VideoFrame;
        } else {
            throw InvalidInput(path + " line " + std::to_string(line_no) +
                               ": bad modality '" + fields[4] + "'");
        }
        s.attributes.gender = parse_gender(fields[5], line_no);
        s.attributes.skin_tone =
            fields[6].empty() ? kUnknown : parse_i64(fields[6], line_no, "skin_tone");
        samples.push_back(std::move(s));
    }
    return samples;
}

void save_dataset(const Dataset& dataset, const std::string& embedding_path,
                  const std::string& metadata_path) {
    std::vector<Embedding> rows;
    rows.reserve(dataset.samples.size());
    for (const auto& s : dataset.samples) rows.push_back(s.embedding);
    write_embeddings(embedding_path, rows);
    write_metadata(metadata_path, dataset.samples);
}

Dataset load_dataset(const std::string& embedding_path,
                     const std::string& metadata_path) {
    Dataset d;
    d.samples = read_metadata(metadata_path);
    const auto rows = read_embeddings(embedding_path);
    if (rows.size() != d.samples.size())
        throw FormatError(embedding_path + ": " + std::to_string(rows.size()) +
                              " embedding rows for " +
                              std::to_string(d.samples.size()) +
                              " metadata rows",
                          20);
    d.dimension = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        d.samples[i].embedding = rows[i];
    validate_dataset(d);
    return d;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace facet
