#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

namespace yoshimura {

inline constexpr double kPi = std::numbers::pi;

/// The Golden Ratio, (1 + sqrt 5) / 2.
inline constexpr double kPhi = std::numbers::phi;

/// Designs within this angle of an admissibility bound are treated as lying
/// on the bound (1e-3 degrees).
inline constexpr double kBoundSnapTolerance = 1e-3 * kPi / 180.0;

constexpr double radians(double degrees) noexcept { return degrees * kPi / 180.0; }
constexpr double degrees(double radians) noexcept { return radians * 180.0 / kPi; }

struct GoldenConstants {
    double phi;
    /// arccot(phi): the smallest sector angle admitting pop-out states at n = 3.
    double beta_gold;
};

inline GoldenConstants golden_constants() noexcept {
    return {kPhi, std::atan(1.0 / kPhi)};
}

inline double golden_beta() noexcept { return golden_constants().beta_gold; }

/// Sector angle of the traditional, flat-foldable pattern: 2 n beta = pi.
inline double flat_foldable_beta(int n) noexcept { return kPi / (2.0 * n); }

/// A generalized Yoshimura pattern: n rhombi around the circumference, sector
/// angle beta (radians) between mountain and valley creases, valley crease
/// length L.
struct YoshimuraDesign {
    int n = 3;
    double beta = golden_beta();
    double L = 1.0;

    static YoshimuraDesign golden(double L = 1.0) { return {3, golden_beta(), L}; }
    static YoshimuraDesign from_degrees(int n, double beta_degrees, double L = 1.0) {
        return {n, radians(beta_degrees), L};
    }

    /// Half-height of a triangular facet, (L/2) tan(beta).
    double facet_half_height() const { return 0.5 * L * std::tan(beta); }

    /// Throws InvalidArgument unless n >= 3, 0 < beta < pi/2 and L > 0.
    void validate() const;

    bool operator==(const YoshimuraDesign&) const = default;
};

enum class Admissibility { FlatFoldable, FoldableNoPop, MetaStable };

std::string_view to_string(Admissibility a) noexcept;

/// Classifies a design against the flat-foldable bound pi/(2n) and, for n = 3,
/// the Golden-Ratio bound arccot(phi).
///
/// Throws AdmissibilityError for beta below pi/(2n) and Unsupported when n != 3
/// and the design is not exactly flat-foldable.
Admissibility classify_admissibility(const YoshimuraDesign& design);

}  // namespace yoshimura
