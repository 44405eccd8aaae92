#include "trsim/rng.hpp"

#include <cmath>

namespace trsim {

double Rng::exponential() noexcept {
    // 1 - u lies in (0, 1], so the log is finite.
    return -std::log(1.0 - uniform());
}

}  // namespace trsim
