#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yoshimura/kinematics.hpp"

namespace yoshimura {

/// Pop word of one n = 3 module.  Bit k is rhombus k around the
/// circumference (counter-clockwise seen from the tip); bit 0 is the rhombus
/// bisected by the y-z plane of the module's base frame.  The text form lists
/// bit 0 first, so "100" pops rhombus 0 only.
class PopState {
public:
    constexpr PopState() = default;
    constexpr PopState(bool b0, bool b1, bool b2) : bits_{b0, b1, b2} {}

    /// Parses a 3-character string of '0' and '1'.
    static PopState parse(std::string_view text);
    /// code = 4*b0 + 2*b1 + b2, i.e. the text read as a binary number.
    static PopState from_code(unsigned code);

    constexpr bool popped(int rhombus) const { return bits_[static_cast<std::size_t>(rhombus)]; }
    constexpr unsigned code() const {
        return (bits_[0] ? 4u : 0u) | (bits_[1] ? 2u : 0u) | (bits_[2] ? 1u : 0u);
    }
    constexpr int pop_count() const { return int(bits_[0]) + int(bits_[1]) + int(bits_[2]); }
    PopClass pop_class() const { return static_cast<PopClass>(pop_count()); }

    /// Index of the rhombus that breaks the three-fold symmetry: the popped one
    /// for 1-pop states, the folded one for 2-pop states, 0 otherwise.
    int odd_rhombus() const;

    std::string str() const;

    constexpr bool operator==(const PopState&) const = default;

private:
    std::array<bool, 3> bits_{};
};

/// All eight states in lexicographic order 000, 001, ..., 111.
std::array<PopState, 8> all_pop_states();

/// A boom's state word: one PopState per module, base module first.
std::vector<PopState> parse_word(std::string_view text);
std::string word_string(std::span<const PopState> states);

}  // namespace yoshimura
