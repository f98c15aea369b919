#include "qtel/rng.hpp"

#include <cmath>

namespace qtel {

std::array<double, 4> Rng::simplex4() {
    std::array<double, 4> q{};
    double sum = 0.0;
    for (double& x : q) {
        x = -std::log(1.0 - uniform());
        sum += x;
    }
    for (double& x : q) x /= sum;
    return q;
}

}  // namespace qtel
