#pragma once

#include "doc.hpp"

namespace mobi {

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

struct LawResult {
    std::string axiom;
    Status status = Status::Pass;
    json witness;          // array of element encodings when status == Fail
    std::string note;
    std::uint64_t checked = 0;
};

struct Report {
    std::string structure_id;
    std::string profile;
    std::vector<LawResult> results;

    bool passed() const {
        for (const auto& r : results)
            if (r.status == Status::Fail) return false;
        return true;
    }

    const LawResult* find(const std::string& axiom) const {
        for (const auto& r : results)
            if (r.axiom == axiom) return &r;
        return nullptr;
    }

    json to_json() const {
        json out;
        out["structure"] = structure_id;
        out["profile"] = profile;
        out["verdict"] = passed() ? "pass" : "fail";
        json rs = json::array();
        for (const auto& r : results) {
            json e;
            e["axiom"] = r.axiom;
            e["status"] = status_name(r.status);
            e["checked"] = r.checked;
            if (r.status == Status::Fail) e["witness"] = r.witness;
            if (!r.note.empty()) e["note"] = r.note;
            rs.push_back(e);
        }
        out["results"] = rs;
        return out;
    }
};

} // namespace mobi
