#include "freecomm/checks.hpp"

#include <iostream>

int main()
{
    int failed = 0;
    for (const auto& name : freecomm::checks::suite_names()) {
        const auto r = freecomm::checks::run_suite(name);
        std::cout << freecomm::checks::format(r) << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
