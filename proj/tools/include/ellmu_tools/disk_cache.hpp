#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_map>

#include "ellmu/lfunction.hpp"

namespace ellmu::tools {

// Append-only JSONL store of good-place traces. One line per entry, keyed by
// (p, e, curve hash, place, k) and tagged with the schema version and an
// FNV-1a check over the payload. Lines with another schema or a bad check
// are ignored.
class disk_trace_cache : public trace_cache {
public:
    static constexpr int schema_version = 1;

    explicit disk_trace_cache(const std::filesystem::path& dir);

    std::optional<std::int64_t> get(const trace_key& key) override;
    void put(const trace_key& key, std::int64_t trace) override;

    struct stats {
        long loaded = 0;
        long rejected = 0;
        long hits = 0;
        long misses = 0;
        long written = 0;
    };
    const stats& counters() const { return stats_; }
    const std::filesystem::path& file() const { return file_; }

private:
    std::string flatten(const trace_key& key);

    std::filesystem::path file_;
    std::ofstream out_;
    std::unordered_map<std::string, std::int64_t> entries_;
    std::unordered_map<std::string, std::string> curve_hashes_;
    stats stats_;
};

}  // namespace ellmu::tools
