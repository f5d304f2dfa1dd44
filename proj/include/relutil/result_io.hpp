#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace relutil {

inline constexpr const char* kToolVersion = "0.1.0";

// SHA-1 of "blob <size>\0<content>", the same content address git assigns
// to a file with these bytes.
std::string git_blob_sha1(std::string_view content);

// Fixed-format numeric cell: %.{significant}g, locale-independent.
std::string fmt_double(double v, int significant = 10);

// A labeled table of pre-formatted cells plus the metadata needed to rerun
// it. Cells are strings so emitted files are byte-stable across platforms
// and reruns.
struct ResultTable {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string spec_hash;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// CSV with a comment header carrying experiment, seed, spec hash, version.
void write_csv(const ResultTable& t, const std::filesystem::path& path);

// One JSON object per line.
void write_jsonl(const std::vector<nlohmann::json>& records,
                 const std::filesystem::path& path);

} // namespace relutil
