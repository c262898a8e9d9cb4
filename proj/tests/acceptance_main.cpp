#include "ppspec/acceptance.hpp"

#include <cstdio>
#include <cstring>
#include <string>

// Usage: ppspec_acceptance [suite] [--fast]
int main(int argc, char** argv)
{
    std::string suite = "all";
    ppspec::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0)
            opts.fast = true;
        else
            suite = argv[i];
    }
    try {
        const auto results = ppspec::run_suite(suite, opts);
        for (const auto& r : results)
            std::printf("%s\n", ppspec::format_result(r).c_str());
        return ppspec::all_passed(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }
}
