#include "rarbench/io.hpp"

#include <fstream>
#include <sstream>

#include "rarbench/errors.hpp"

namespace rarbench {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<JsonlRecord> read_jsonl(const std::filesystem::path& path, bool drop_torn_tail) {
    std::string content = read_file(path);
    std::vector<JsonlRecord> out;
    int line_no = 0;
    size_t pos = 0;
    while (pos < content.size()) {
        size_t nl = content.find('\n', pos);
        bool terminated = nl != std::string::npos;
        std::string line = content.substr(pos, terminated ? nl - pos : std::string::npos);
        pos = terminated ? nl + 1 : content.size();
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json value = nlohmann::json::parse(line, nullptr, false);
        if (value.is_discarded()) {
            bool is_tail = pos >= content.size();
            if (drop_torn_tail && is_tail) break;
            throw LoadError(path.string() + ":" + std::to_string(line_no) + ": malformed JSON line");
        }
        // An unterminated but parseable final line still counts as torn: the
        // writer flushes '\n' with the record, so its absence means a cut.
        if (!terminated && drop_torn_tail) break;
        out.push_back({line_no, std::move(value)});
    }
    return out;
}

size_t jsonl_valid_prefix(const std::filesystem::path& path) {
    std::string content = read_file(path);
    size_t good_end = 0;
    size_t pos = 0;
    while (pos < content.size()) {
        size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) break;
        std::string line = content.substr(pos, nl - pos);
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            nlohmann::json value = nlohmann::json::parse(line, nullptr, false);
            if (value.is_discarded()) break;
        }
        good_end = nl + 1;
        pos = nl + 1;
    }
    return good_end;
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw LoadError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw LoadError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace rarbench
