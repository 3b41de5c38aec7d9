#include "ellmu_tools/disk_cache.hpp"

#include <nlohmann/json.hpp>

#include "ellmu/errors.hpp"
#include "ellmu_tools/spec.hpp"

namespace ellmu::tools {

namespace {

std::string payload(std::uint32_t p, std::uint32_t e, const std::string& curve, const std::string& place, int k,
                    std::int64_t trace) {
    return std::to_string(p) + "|" + std::to_string(e) + "|" + curve + "|" + place + "|" + std::to_string(k) + "|" +
           std::to_string(trace);
}

std::string entry_key(std::uint32_t p, std::uint32_t e, const std::string& curve, const std::string& place, int k) {
    return std::to_string(p) + "|" + std::to_string(e) + "|" + curve + "|" + place + "|" + std::to_string(k);
}

}  // namespace

disk_trace_cache::disk_trace_cache(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw input_error("cannot create cache directory " + dir.string() + ": " + ec.message());
    file_ = dir / ("traces.v" + std::to_string(schema_version) + ".jsonl");
    if (std::ifstream in(file_); in) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto j = nlohmann::json::parse(line, nullptr, false);
            try {
                if (j.is_discarded() || j.value("schema", 0) != schema_version) throw std::runtime_error("schema");
                const auto p = j.at("p").get<std::uint32_t>();
                const auto e = j.at("e").get<std::uint32_t>();
                const auto curve = j.at("curve").get<std::string>();
                const auto place = j.at("place").get<std::string>();
                const auto k = j.at("k").get<int>();
                const auto trace = j.at("trace").get<std::int64_t>();
                if (j.at("check").get<std::string>() != hex64(fnv1a64(payload(p, e, curve, place, k, trace))))
                    throw std::runtime_error("check");
                entries_[entry_key(p, e, curve, place, k)] = trace;
                ++stats_.loaded;
            } catch (const std::exception&) {
                ++stats_.rejected;
            }
        }
    }
    out_.open(file_, std::ios::app);
    if (!out_) throw input_error("cannot write cache file " + file_.string());
}

std::string disk_trace_cache::flatten(const trace_key& key) {
    auto it = curve_hashes_.find(key.curve);
    if (it == curve_hashes_.end()) it = curve_hashes_.emplace(key.curve, hex64(fnv1a64(key.curve))).first;
    return entry_key(key.p, key.e, it->second, key.place, key.degree);
}

std::optional<std::int64_t> disk_trace_cache::get(const trace_key& key) {
    const auto it = entries_.find(flatten(key));
    if (it == entries_.end()) {
        ++stats_.misses;
        return std::nullopt;
    }
    ++stats_.hits;
    return it->second;
}

void disk_trace_cache::put(const trace_key& key, std::int64_t trace) {
    const std::string k = flatten(key);
    if (!entries_.emplace(k, trace).second) return;
    const std::string& hash = curve_hashes_.at(key.curve);
    nlohmann::ordered_json j;
    j["schema"] = schema_version;
    j["p"] = key.p;
    j["e"] = key.e;
    j["curve"] = hash;
    j["place"] = key.place;
    j["k"] = key.degree;
    j["trace"] = trace;
    j["check"] = hex64(fnv1a64(payload(key.p, key.e, hash, key.place, key.degree, trace)));
    out_ << j.dump() << '\n';
    out_.flush();
    ++stats_.written;
}

}  // namespace ellmu::tools
