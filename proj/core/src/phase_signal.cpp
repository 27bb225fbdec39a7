#include "stmm/phase_signal.hpp"

#include "stmm/constants.hpp"

namespace stmm {

LinearPhase LinearPhase::from_kappa(double kappa, double carrier_hz) { return LinearPhase(two_pi * kappa * carrier_hz); }

}  // namespace stmm
