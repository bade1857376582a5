#pragma once

#include "repzeta/common.hpp"

#include "json.hpp"

#include <functional>
#include <string>
#include <vector>

namespace repzeta {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string expected, actual;
    double seconds = 0;
    nlohmann::json detail = nlohmann::json::array();  // one entry per sub-check
    nlohmann::json to_json() const;
    // "PASS  3 nilpotent component, two routes  (expected ..., got ...)  12.3s"
    std::string line() const;
};

constexpr int kCriteria = 11;

std::string criterion_name(int id);
CheckResult run_criterion(int id);

// identities, uniformity, nilpotent, censuses, euler, all
std::vector<int> suite_criteria(const std::string& suite);
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const std::function<void(const CheckResult&)>& on_result = {});
nlohmann::json suite_json(const std::string& suite, const std::vector<CheckResult>& results);

}  // namespace repzeta
