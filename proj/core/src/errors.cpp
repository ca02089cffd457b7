#include "hypstab/errors.hpp"

#include <sstream>

namespace hypstab {

namespace {

std::string describe(const char* what, int node, double time) {
    std::ostringstream os;
    os << what << " at node " << node << ", t = " << time;
    return os.str();
}

}  // namespace

PositivityLoss::PositivityLoss(int node, double time)
    : NumericalError(describe("metric eigenvalue lost positivity", node, time)),
      node_(node),
      time_(time) {}

ClosenessAbort::ClosenessAbort(double closeness, double threshold, double time)
    : NumericalError([&] {
          std::ostringstream os;
          os << "closeness " << closeness << " exceeded abort threshold " << threshold
             << " at t = " << time;
          return os.str();
      }()),
      closeness_(closeness),
      time_(time) {}

MonotonicityLoss::MonotonicityLoss(int node, double time)
    : NumericalError(describe("radial map not strictly increasing", node, time)),
      node_(node),
      time_(time) {}

}  // namespace hypstab
