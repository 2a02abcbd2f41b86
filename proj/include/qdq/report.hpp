#pragma once

#include <string>
#include <vector>

namespace qdq {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // residual or diagnostic, empty when exactly zero
};

struct Report {
    std::vector<CheckResult> checks;

    void add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (const auto& c : o.checks) checks.push_back({prefix + c.name, c.pass, c.detail});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::string text() const {
        std::string s;
        for (const auto& c : checks) {
            s += (c.pass ? "PASS " : "FAIL ") + c.name;
            if (!c.detail.empty()) s += "  " + c.detail;
            s += '\n';
        }
        return s;
    }
};

}  // namespace qdq
