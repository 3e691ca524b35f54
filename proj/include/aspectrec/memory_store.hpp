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

#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aspectrec/profiles.hpp"

namespace aspectrec {

struct LogEntry {
    std::int64_t seq = 0;
    std::int64_t ts = 0;
    std::string kind;  // recommendation | feedback | weight_change
    nlohmann::json payload;
};

struct LogFilter {
    std::optional<std::string> kind;
    std::int64_t min_seq = 0;
    std::int64_t max_seq = INT64_MAX;
};

/// File-backed profile index plus an append-only JSON-lines log. One JSON
/// file (and one binary embedding file) per profile under
/// root/{user,item}/<owner>.json; the log lives at root/log.jsonl with
/// strictly increasing sequence numbers. Multi-reader, single-writer: all
/// writes serialize through an internal mutex and land via atomic renames,
/// readers never block writers.
class MemoryStore {
public:
    using Clock = std::function<std::int64_t()>;

    /// Opens or creates the store. A partially written log tail (e.g. after a
    /// crash) is moved to log.quarantine and counted; at most the trailing
    /// entries after the last good line are lost.
    explicit MemoryStore(std::string root, Clock clock = nullptr);

    /// Overwrites any existing profile, bumping its stored version.
    void put_profile(const Profile& p);

    /// Returns the stored profile or nullopt. A record that fails to decode
    /// is quarantined (renamed *.quarantined) and reported by throwing
    /// CorruptRecordError; the store stays readable.
    std::optional<Profile> get_profile(OwnerKind kind, const std::string& owner_id) const;

    /// Appends one entry; returns its assigned sequence number.
    std::int64_t append_log(const std::string& kind, nlohmann::json payload);

    /// Entries in sequence order matching the filter.
    std::vector<LogEntry> read_log(const LogFilter& filter = {}) const;

    std::int64_t last_seq() const { return next_seq_ - 1; }
    int dropped_log_entries() const { return dropped_; }
    const std::string& root() const { return root_; }

private:
    std::string profile_path(OwnerKind kind, const std::string& owner_id, const char* ext) const;
    void recover_log();

    std::string root_;
    Clock clock_;
    mutable std::mutex write_mu_;
    std::int64_t next_seq_ = 1;
    int dropped_ = 0;
};

}  // namespace aspectrec
