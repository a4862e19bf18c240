#include "ivpcap/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    auto results = ivpcap::run_acceptance(quick, std::cout);
    int failures = 0;
    for (const auto& r : results) failures += r.pass ? 0 : 1;
    return failures == 0 ? 0 : 1;
}
