// Runs the algebra and bimodule identity sweeps at small bounds and prints
// the counts, a quick smoke run for new setups.

#include <iostream>

#include "cendalg/cendalg.hpp"

using namespace cendalg;

int main() {
    auto algebra = run_algebra_checks(5, 6);
    std::cout << "algebra identities: " << algebra.checked << " checked, "
              << algebra.violations.size() << " violations\n";

    bool ok = algebra.pass();
    for (const char* name : {"regular", "regular_zero_right", "zero"}) {
        auto m = builtin_bimodule(name);
        auto rep = check_bimodule_axioms(*m, 3, 4);
        std::cout << name << ": " << rep.checked << " checked, " << rep.violations.size()
                  << " violations\n";
        ok = ok && rep.pass();
    }
    return ok ? 0 : 1;
}
