#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

namespace qh {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "skipped";
    }
}

struct CheckRecord {
    std::string name;
    Status status = Status::pass;
    std::string witness;
    nlohmann::json detail;
    double seconds = 0.0;
};

struct Report {
    std::vector<CheckRecord> checks;

    bool ok() const {
        for (auto& c : checks)
            if (c.status == Status::fail) return false;
        return true;
    }
    const CheckRecord* find(const std::string& name) const {
        for (auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void append(const Report& o, const std::string& prefix = "") {
        for (auto c : o.checks) {
            if (!prefix.empty()) c.name = prefix + "." + c.name;
            checks.push_back(std::move(c));
        }
    }
    std::string first_failure() const {
        for (auto& c : checks)
            if (c.status == Status::fail) return c.name + ": " + c.witness;
        return "";
    }
    // wall time is left out unless asked for, so reports stay byte-identical
    nlohmann::json to_json(bool with_time = false) const {
        nlohmann::json arr = nlohmann::json::array();
        for (auto& c : checks) {
            nlohmann::json j{{"name", c.name}, {"status", status_name(c.status)}};
            if (!c.witness.empty()) j["witness"] = c.witness;
            if (!c.detail.is_null()) j["detail"] = c.detail;
            if (with_time) j["wall_time"] = c.seconds;
            arr.push_back(j);
        }
        return arr;
    }
};

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

// Runs fn, which returns an empty string on success or a witness on failure.
template <class F>
CheckRecord run_check(const std::string& name, F&& fn) {
    Stopwatch sw;
    CheckRecord r;
    r.name = name;
    std::string w = fn();
    r.status = w.empty() ? Status::pass : Status::fail;
    r.witness = w;
    r.seconds = sw.seconds();
    return r;
}

}  // namespace qh
