#include "boollat/acceptance.hpp"

#include <iostream>

int main() {
    auto results = boollat::run_acceptance();
    bool ok = boollat::print_acceptance(std::cout, results, true);
    return ok ? 0 : 1;
}
