#include "panopt/token_codec.hpp"

#include <cmath>
#include <cstddef>

#include "panopt/errors.hpp"

namespace panopt {

namespace {

constexpr unsigned kLegSlotBase = 64;
constexpr unsigned kLegSlotBits = 48;
constexpr std::int64_t kTickMin = -(std::int64_t{1} << 23);
constexpr std::int64_t kTickMax = (std::int64_t{1} << 23) - 1;
constexpr std::int64_t kWidthMax = 0xFFFF;

const double kLogTick = std::log(1.0001);

std::uint64_t get_bits(const std::array<std::uint64_t, 4>& w, unsigned pos,
                       unsigned len) {
    const unsigned word = pos / 64;
    const unsigned off = pos % 64;
    std::uint64_t v = w[word] >> off;
    if (off + len > 64) v |= w[word + 1] << (64 - off);
    if (len < 64) v &= (std::uint64_t{1} << len) - 1;
    return v;
}

void set_bits(std::array<std::uint64_t, 4>& w, unsigned pos, unsigned len,
              std::uint64_t value) {
    const unsigned word = pos / 64;
    const unsigned off = pos % 64;
    w[word] |= value << off;
    if (off + len > 64) w[word + 1] |= value >> (64 - off);
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string token_to_hex(const TokenId& id) {
    static const char* digits = "0123456789abcdef";
    std::string out(64, '0');
    std::size_t pos = 0;
    for (int w = 3; w >= 0; --w) {
        for (int nib = 15; nib >= 0; --nib) {
            out[pos++] = digits[(id.words[w] >> (4 * nib)) & 0xF];
        }
    }
    return out;
}

TokenId token_from_hex(const std::string& hex) {
    std::size_t start = 0;
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        start = 2;
    }
    if (hex.size() - start != 64) {
        throw MalformedTokenError("token hex must be 64 digits, got " +
                                  std::to_string(hex.size() - start));
    }
    TokenId id;
    for (std::size_t i = 0; i < 64; ++i) {
        const int d = hex_digit(hex[start + i]);
        if (d < 0) {
            throw MalformedTokenError(std::string("bad hex digit '") +
                                      hex[start + i] + "' in token");
        }
        const std::size_t w = 3 - i / 16;
        id.words[w] = (id.words[w] << 4) | static_cast<std::uint64_t>(d);
    }
    return id;
}

std::int32_t strike_to_tick(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike)) {
        throw DomainError("strike must be positive to quantize");
    }
    const double raw = std::log(strike) / kLogTick;
    const std::int64_t tick = std::llround(raw);
    if (tick < kTickMin || tick > kTickMax) {
        throw EncodingRangeError("strike tick " + std::to_string(tick) +
                                 " outside 24-bit range");
    }
    return static_cast<std::int32_t>(tick);
}

double tick_to_strike(std::int32_t tick) {
    return std::pow(1.0001, static_cast<double>(tick));
}

std::int32_t range_factor_to_width(double range_factor) {
    if (!(range_factor >= 1.0) || !std::isfinite(range_factor)) {
        throw DomainError("range_factor must be >= 1 to quantize");
    }
    const std::int64_t width = std::llround(2.0 * std::log(range_factor) / kLogTick);
    if (width > kWidthMax) {
        throw EncodingRangeError("range width " + std::to_string(width) +
                                 " exceeds 16-bit field");
    }
    return static_cast<std::int32_t>(width);
}

double width_to_range_factor(std::int32_t width) {
    return std::pow(1.0001, static_cast<double>(width) / 2.0);
}

Leg quantize_leg(const Leg& leg) {
    validate_leg(leg);
    Leg out = leg;
    out.strike = tick_to_strike(strike_to_tick(leg.strike));
    out.range_factor = width_to_range_factor(range_factor_to_width(leg.range_factor));
    return out;
}

TokenId encode_token(std::uint64_t pool_id, const std::vector<Leg>& legs) {
    if (legs.empty()) throw DomainError("cannot encode a token with no legs");
    if (legs.size() > static_cast<std::size_t>(kMaxLegs)) {
        throw CapacityError("token supports at most " + std::to_string(kMaxLegs) +
                            " legs, got " + std::to_string(legs.size()));
    }
    TokenId id;
    id.words[0] = pool_id;
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const Leg& leg = legs[i];
        validate_leg(leg);
        const double rounded = std::round(leg.size);
        if (std::abs(leg.size - rounded) > 1e-9 * std::max(1.0, std::abs(leg.size))) {
            throw EncodingRangeError("leg size " + std::to_string(leg.size) +
                                     " is not an integer ratio");
        }
        const std::int64_t ratio = std::llround(rounded);
        if (ratio < 1 || ratio > 15) {
            throw EncodingRangeError("leg ratio " + std::to_string(ratio) +
                                     " outside 1..15");
        }
        const std::int32_t tick = strike_to_tick(leg.strike);
        const std::int32_t width = range_factor_to_width(leg.range_factor);

        std::uint64_t slot = static_cast<std::uint64_t>(tick) & 0xFFFFFF;
        slot |= (static_cast<std::uint64_t>(width) & 0xFFFF) << 24;
        if (leg.is_put) slot |= std::uint64_t{1} << 40;
        if (leg.is_long) slot |= std::uint64_t{1} << 41;
        slot |= static_cast<std::uint64_t>(ratio) << 42;
        set_bits(id.words, kLegSlotBase + kLegSlotBits * static_cast<unsigned>(i),
                 kLegSlotBits, slot);
    }
    return id;
}

DecodedToken decode_token(const TokenId& id) {
    DecodedToken out;
    out.pool_id = id.words[0];
    for (unsigned i = 0; i < 4; ++i) {
        const std::uint64_t slot =
            get_bits(id.words, kLegSlotBase + kLegSlotBits * i, kLegSlotBits);
        if (slot == 0) continue;
        if ((slot >> 46) != 0) {
            throw MalformedTokenError("reserved bits set in leg slot " +
                                      std::to_string(i));
        }
        const std::uint64_t ratio = (slot >> 42) & 0xF;
        if (ratio == 0) {
            throw MalformedTokenError("leg slot " + std::to_string(i) +
                                      " has data but zero ratio");
        }
        // sign-extend the 24-bit tick
        std::int32_t tick = static_cast<std::int32_t>(slot & 0xFFFFFF);
        if (tick & 0x800000) tick -= 1 << 24;
        const std::int32_t width = static_cast<std::int32_t>((slot >> 24) & 0xFFFF);

        Leg leg;
        leg.strike = tick_to_strike(tick);
        leg.range_factor = width_to_range_factor(width);
        leg.is_put = (slot >> 40) & 1;
        leg.is_long = (slot >> 41) & 1;
        leg.size = static_cast<double>(ratio);
        out.legs.push_back(leg);
    }
    if (out.legs.empty()) {
        throw MalformedTokenError("token has no legs");
    }
    return out;
}

Position decode_position(const TokenId& id, const TokenPair& pair) {
    DecodedToken dec = decode_token(id);
    Position pos;
    pos.pair = pair;
    pos.legs = std::move(dec.legs);
    return pos;
}

}  // namespace panopt
