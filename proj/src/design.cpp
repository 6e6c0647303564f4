#include "yoshimura/design.hpp"

#include <string>

#include "yoshimura/errors.hpp"

namespace yoshimura {

void YoshimuraDesign::validate() const {
    if (n < 3) {
        throw InvalidArgument("n must be at least 3, got " + std::to_string(n));
    }
    if (!(beta > 0.0 && beta < kPi / 2.0)) {
        throw InvalidArgument("beta must lie in (0, 90) degrees, got " +
                              std::to_string(degrees(beta)));
    }
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw InvalidArgument("L must be positive, got " + std::to_string(L));
    }
}

std::string_view to_string(Admissibility a) noexcept {
    switch (a) {
        case Admissibility::FlatFoldable: return "FlatFoldable";
        case Admissibility::FoldableNoPop: return "FoldableNoPop";
        case Admissibility::MetaStable: return "MetaStable";
    }
    return "?";
}

Admissibility classify_admissibility(const YoshimuraDesign& design) {
    design.validate();
    const double flat = flat_foldable_beta(design.n);
    if (design.beta < flat - kBoundSnapTolerance) {
        throw AdmissibilityError("beta = " + std::to_string(degrees(design.beta)) +
                                 " deg is below the foldable bound pi/(2n) = " +
                                 std::to_string(degrees(flat)) + " deg");
    }
    if (design.beta <= flat + kBoundSnapTolerance) {
        return Admissibility::FlatFoldable;
    }
    if (design.n != 3) {
        throw Unsupported("pop-out admissibility is only derived for n = 3");
    }
    if (design.beta < golden_beta() - kBoundSnapTolerance) {
        return Admissibility::FoldableNoPop;
    }
    return Admissibility::MetaStable;
}

}  // namespace yoshimura
