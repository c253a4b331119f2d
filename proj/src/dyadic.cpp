#include "quadriga/dyadic.hpp"

namespace quadriga {

DyadicApprox approx_add(const DyadicApprox& a, const DyadicApprox& b) {
    return DyadicApprox{a.value + b.value, a.err + b.err};
}

Certainty compare_with_margin(const DyadicApprox& a, const Rational& threshold) {
    if (a.value - a.err > threshold) return Certainty::CertainlyAbove;
    if (a.value + a.err < threshold) return Certainty::CertainlyBelow;
    return Certainty::Undecided;
}

}  // namespace quadriga
