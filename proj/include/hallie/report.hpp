// Verification records and their JSON form.
#pragma once

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

#include "hallie/numeric.hpp"

namespace hallie {

inline constexpr const char* kToolVersion = "0.1.0";

/// One checked identity. modulus 0 means exact equality over Z.
struct CheckRecord {
  std::string check;
  std::string instance;
  std::string lhs;
  std::string rhs;
  long long modulus = 0;
  bool ok = true;
  bool vacuous = false;
  std::string note;
};

class CheckReport {
 public:
  void add(CheckRecord r) { records_.push_back(std::move(r)); }

  /// Records lhs == rhs (exact) or lhs == rhs mod m.
  void expect_equal(const std::string& check, const std::string& instance, const BigInt& lhs, const BigInt& rhs,
                    long long modulus = 0) {
    CheckRecord r{check, instance, to_string(lhs), to_string(rhs), modulus};
    if (modulus == 0) {
      r.ok = lhs == rhs;
    } else {
      r.vacuous = modulus == 1;
      r.ok = mod_floor(lhs, modulus) == mod_floor(rhs, modulus);
    }
    add(std::move(r));
  }

  void expect_true(const std::string& check, const std::string& instance, bool ok, const std::string& note = {}) {
    add({check, instance, ok ? "true" : "false", "true", 0, ok, false, note});
  }

  void append(const CheckReport& o) { records_.insert(records_.end(), o.records_.begin(), o.records_.end()); }

  const std::vector<CheckRecord>& records() const { return records_; }
  std::size_t checked() const { return records_.size(); }
  std::size_t violations() const {
    std::size_t v = 0;
    for (const auto& r : records_)
      if (!r.ok) ++v;
    return v;
  }
  std::size_t vacuous() const {
    std::size_t v = 0;
    for (const auto& r : records_)
      if (r.vacuous) ++v;
    return v;
  }
  bool passed() const { return violations() == 0; }

  nlohmann::json records_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records_) {
      nlohmann::json j = {{"check", r.check}, {"instance", r.instance}, {"lhs", r.lhs},   {"rhs", r.rhs},
                          {"modulus", r.modulus}, {"ok", r.ok},       {"vacuous", r.vacuous}};
      if (!r.note.empty()) j["note"] = r.note;
      arr.push_back(std::move(j));
    }
    return arr;
  }

  nlohmann::json summary_json() const {
    return {{"checked", checked()}, {"violations", violations()}, {"vacuous", vacuous()}, {"passed", passed()}};
  }

 private:
  std::vector<CheckRecord> records_;
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hallie
