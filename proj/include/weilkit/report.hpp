#pragma once
#include <weilkit/lie.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace weilkit {

inline constexpr const char* kReportSchema = "weilkit-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

// Deterministic JSON report accumulator; field order is insertion order.
class Report {
public:
    Report(std::string command, std::string algebra) {
        doc_["schema"] = kReportSchema;
        doc_["version"] = kToolVersion;
        doc_["command"] = std::move(command);
        doc_["algebra"] = std::move(algebra);
        doc_["checks"] = nlohmann::ordered_json::array();
    }

    void set(const std::string& key, const nlohmann::ordered_json& v) { doc_[key] = v; }

    void add_check(const std::string& id, bool pass, int degree, const std::string& detail = "") {
        nlohmann::ordered_json c;
        c["id"] = id;
        c["status"] = pass ? "PASS" : "FAIL";
        c["degree"] = degree;
        if (!detail.empty()) c["detail"] = detail;
        doc_["checks"].push_back(c);
        all_pass_ = all_pass_ && pass;
    }

    bool all_pass() const { return all_pass_; }
    std::string dump() const { return doc_.dump(2) + "\n"; }

private:
    nlohmann::ordered_json doc_;
    bool all_pass_ = true;
};

} // namespace weilkit
