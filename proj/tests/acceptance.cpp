#include "repzeta/verify.hpp"

#include <iostream>
#include <string>

using namespace repzeta;

// acceptance [id ...]; no ids runs every criterion
int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
    if (ids.empty())
        for (int id = 1; id <= kCriteria; ++id) ids.push_back(id);
    int failed = 0;
    for (int id : ids) {
        CheckResult r = run_criterion(id);
        std::cout << r.line() << std::endl;
        if (!r.pass) {
            ++failed;
            for (const auto& d : r.detail)
                if (!d["pass"].get<bool>()) std::cout << "      " << d.dump() << "\n";
        }
    }
    std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
