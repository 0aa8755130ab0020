#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace rarbench {

struct JsonlRecord {
    int line = 0;  // 1-based
    nlohmann::json value;
};

// Parses every non-empty line as a JSON object; throws LoadError with the
// offending line number. A torn (unparseable) final line is tolerated only
// when `drop_torn_tail` is set, in which case it is silently dropped.
std::vector<JsonlRecord> read_jsonl(const std::filesystem::path& path, bool drop_torn_tail = false);

std::string read_file(const std::filesystem::path& path);

// Write-to-temp then rename, so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Byte offset just past the last complete (newline-terminated, parseable) line.
// Used to drop a torn tail before appending again.
size_t jsonl_valid_prefix(const std::filesystem::path& path);

}  // namespace rarbench
