// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <iostream>

#include "normalhst/cli.hpp"

int main(int argc, char** argv) {
    using namespace normalhst;
    acceptance::Options opt;
    if (argc > 1) opt.seed = std::stoull(argv[1]);
    opt.cli = [](const std::vector<std::string>& a, std::ostream& out, std::ostream& err) {
        return cli::run_cli(a, out, err);
    };
    bool all = true;
    for (const auto& c : acceptance::criteria()) {
        const auto r = acceptance::run_criterion(c, opt);
        all = all && r.pass;
        std::cout << acceptance::format_line(r, true) << std::endl;
    }
    return all ? 0 : 1;
}
