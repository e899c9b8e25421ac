/* Memo cache: unordered in-memory map plus an optional JSONL file
 * (GRASSCALC_CACHE_DIR/memo.jsonl).  Lines are {"key": ..., "value": ...}. */
#include "grasscalc/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace grasscalc::cache {
namespace {

struct State {
    std::mutex mu;
    std::unordered_map<std::string, std::string> mem;
    std::string dir;
    bool disk_on = true;
    bool loaded = false;

    std::string file_path() const { return dir + "/memo.jsonl"; }

    void load_locked() {
        if (loaded) return;
        loaded = true;
        const char* env = std::getenv("GRASSCALC_CACHE_DIR");
        dir = env ? env : "";
        if (dir.empty() || !disk_on) return;
        std::ifstream in(file_path());
        if (!in) return;
        std::string line;
        long lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto parsed = nlohmann::json::parse(line, nullptr, false);
            if (parsed.is_discarded() || !parsed.is_object() ||
                !parsed.contains("key") || !parsed.contains("value") ||
                !parsed["key"].is_string() || !parsed["value"].is_string()) {
                std::cerr << "grasscalc: cache: skipping corrupt line " << lineno
                          << " in " << file_path() << "\n";
                continue;
            }
            mem[parsed["key"].get<std::string>()] = parsed["value"].get<std::string>();
        }
    }

    void append_locked(const std::string& key, const std::string& value) {
        if (dir.empty() || !disk_on) return;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::ofstream out(file_path(), std::ios::app);
        if (!out) return;
        nlohmann::json j;
        j["key"] = key;
        j["value"] = value;
        out << j.dump() << "\n";
    }
};

State& state() {
    static State s;
    return s;
}

}  // namespace

std::optional<std::string> get(const std::string& key) {
    State& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.load_locked();
    auto it = s.mem.find(key);
    if (it == s.mem.end()) return std::nullopt;
    return it->second;
}

void put(const std::string& key, const std::string& value) {
    State& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.load_locked();
    auto [it, inserted] = s.mem.emplace(key, value);
    if (inserted) s.append_locked(key, value);
}

void set_disk_enabled(bool enabled) {
    State& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.disk_on = enabled;
}

bool disk_enabled() {
    State& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    return s.disk_on;
}

void reset() {
    State& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    s.mem.clear();
    s.loaded = false;
}

}  // namespace grasscalc::cache
