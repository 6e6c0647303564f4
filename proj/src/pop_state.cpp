#include "yoshimura/pop_state.hpp"

#include "yoshimura/errors.hpp"

namespace yoshimura {

PopState PopState::parse(std::string_view text) {
    if (text.size() != 3) {
        throw InvalidArgument("pop state must have exactly 3 characters, got '" +
                              std::string(text) + "'");
    }
    std::array<bool, 3> bits{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw InvalidArgument("pop state must match [01]{3}, got '" + std::string(text) + "'");
        }
        bits[i] = text[i] == '1';
    }
    return {bits[0], bits[1], bits[2]};
}

PopState PopState::from_code(unsigned code) {
    if (code > 7) throw InvalidArgument("pop state code must be in [0, 7]");
    return {(code & 4u) != 0, (code & 2u) != 0, (code & 1u) != 0};
}

int PopState::odd_rhombus() const {
    const int count = pop_count();
    if (count == 1 || count == 2) {
        const bool odd_value = count == 1;
        for (int k = 0; k < 3; ++k) {
            if (popped(k) == odd_value) return k;
        }
    }
    return 0;
}

std::string PopState::str() const {
    std::string s(3, '0');
    for (int k = 0; k < 3; ++k) {
        if (popped(k)) s[static_cast<std::size_t>(k)] = '1';
    }
    return s;
}

std::array<PopState, 8> all_pop_states() {
    std::array<PopState, 8> out;
    for (unsigned c = 0; c < 8; ++c) out[c] = PopState::from_code(c);
    return out;
}

std::vector<PopState> parse_word(std::string_view text) {
    if (text.size() % 3 != 0) {
        throw InvalidArgument("state word length must be a multiple of 3, got '" +
                              std::string(text) + "'");
    }
    std::vector<PopState> out;
    out.reserve(text.size() / 3);
    for (std::size_t i = 0; i < text.size(); i += 3) {
        out.push_back(PopState::parse(text.substr(i, 3)));
    }
    return out;
}

std::string word_string(std::span<const PopState> states) {
    std::string out;
    out.reserve(states.size() * 3);
    for (const PopState& s : states) out += s.str();
    return out;
}

}  // namespace yoshimura
