#include "cmgate/selftest.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char ** argv)
{
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    auto results = cmgate::run_acceptance(only, std::cout);
    int failed = 0;
    for (auto & r : results)
        failed += !r.passed;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
