// Copyright 2026 The aspectrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aspectrec/memory_store.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "aspectrec/error.hpp"

namespace aspectrec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string escape_id(const std::string& id) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(id.size());
    for (unsigned char c : id) {
        bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
        if (safe) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

std::int64_t system_clock_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

void atomic_write(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void quarantine_file(const fs::path& path) {
    fs::path q = path;
    q += ".quarantined";
    std::error_code ec;
    fs::rename(path, q, ec);  // best effort: the record is unreadable either way
}

}  // namespace

MemoryStore::MemoryStore(std::string root, Clock clock)
    : root_(std::move(root)), clock_(clock ? std::move(clock) : system_clock_seconds) {
    fs::create_directories(fs::path(root_) / "user");
    fs::create_directories(fs::path(root_) / "item");
    recover_log();
}

void MemoryStore::recover_log() {
    const fs::path log = fs::path(root_) / "log.jsonl";
    if (!fs::exists(log)) return;

    std::ifstream in(log, std::ios::binary);
    if (!in) throw IoError("cannot open log: " + log.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();

    std::uint64_t good_end = 0;
    std::int64_t last_seq = 0;
    int bad = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            ++bad;  // partial trailing line (no newline): a torn write
            break;
        }
        std::string line = content.substr(pos, nl - pos);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("seq") || !j["seq"].is_number_integer()) {
            // Count every remaining line as dropped and stop here.
            ++bad;
            for (std::size_t p = nl + 1; p < content.size();) {
                std::size_t n2 = content.find('\n', p);
                ++bad;
                if (n2 == std::string::npos) break;
                p = n2 + 1;
            }
            break;
        }
        last_seq = j["seq"].get<std::int64_t>();
        good_end = nl + 1;
        pos = nl + 1;
    }

    next_seq_ = last_seq + 1;
    dropped_ = bad;
    if (bad > 0) {
        std::ofstream q(fs::path(root_) / "log.quarantine", std::ios::app | std::ios::binary);
        q << content.substr(good_end);
        fs::resize_file(log, good_end);
    }
}

std::string MemoryStore::profile_path(OwnerKind kind, const std::string& owner_id,
                                      const char* ext) const {
    return (fs::path(root_) / owner_kind_str(kind) / (escape_id(owner_id) + ext)).string();
}

void MemoryStore::put_profile(const Profile& p) {
    std::lock_guard lk(write_mu_);
    const std::string jpath = profile_path(p.kind, p.owner_id, ".json");

    std::int64_t version = 1;
    if (fs::exists(jpath)) {
        std::ifstream in(jpath);
        json prev = json::parse(in, nullptr, false);
        if (!prev.is_discarded() && prev.contains("version"))
            version = prev["version"].get<std::int64_t>() + 1;
    }
    json body = profile_to_json(p);
    body["version"] = version;

    // Embedding first: a reader that sees the new JSON must find a matching
    // embedding file.
    const std::string epath = profile_path(p.kind, p.owner_id, ".emb");
    {
        fs::path tmp = epath + ".tmp";
        write_embedding(tmp.string(), p.embedding);
        fs::rename(tmp, epath);
    }
    atomic_write(jpath, body.dump(2) + "\n");
}

std::optional<Profile> MemoryStore::get_profile(OwnerKind kind,
                                                const std::string& owner_id) const {
    const std::string jpath = profile_path(kind, owner_id, ".json");
    if (!fs::exists(jpath)) return std::nullopt;

    std::ifstream in(jpath);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        quarantine_file(jpath);
        throw CorruptRecordError("quarantined corrupt profile record: " + jpath);
    }
    const std::string epath = profile_path(kind, owner_id, ".emb");
    EmbeddingVector emb;
    try {
        emb = read_embedding(epath);
    } catch (const Error&) {
        quarantine_file(epath);
        throw CorruptRecordError("quarantined corrupt embedding record: " + epath);
    }
    try {
        return profile_from_json(j, std::move(emb));
    } catch (const json::exception&) {
        quarantine_file(jpath);
        throw CorruptRecordError("quarantined malformed profile record: " + jpath);
    }
}

std::int64_t MemoryStore::append_log(const std::string& kind, json payload) {
    std::lock_guard lk(write_mu_);
    LogEntry e;
    e.seq = next_seq_++;
    e.ts = clock_();
    e.kind = kind;
    e.payload = std::move(payload);

    json line{{"seq", e.seq}, {"ts", e.ts}, {"kind", e.kind}, {"payload", e.payload}};
    std::ofstream out(fs::path(root_) / "log.jsonl", std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot append to log in " + root_);
    out << line.dump() << '\n';
    out.flush();
    if (!out) throw IoError("short log append in " + root_);
    return e.seq;
}

std::vector<LogEntry> MemoryStore::read_log(const LogFilter& filter) const {
    const fs::path log = fs::path(root_) / "log.jsonl";
    std::vector<LogEntry> out;
    if (!fs::exists(log)) return out;
    std::ifstream in(log);
    std::string line;
    while (std::getline(in, line)) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;  // torn tail while a writer is active
        LogEntry e;
        e.seq = j.value("seq", static_cast<std::int64_t>(0));
        e.ts = j.value("ts", static_cast<std::int64_t>(0));
        e.kind = j.value("kind", std::string());
        e.payload = j.value("payload", json());
        if (e.seq < filter.min_seq || e.seq > filter.max_seq) continue;
        if (filter.kind && e.kind != *filter.kind) continue;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace aspectrec
