#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "panopt/instrument.hpp"

namespace panopt {

// 256-bit position token, four 64-bit words in little-endian order
// (words[0] holds bits 0..63). Rendered as 64 lowercase hex digits,
// most significant word first.
//
// Layout:
//   bits [0, 63]    pool id
//   bits [64+48i, 64+48i+47]  leg slot i, i = 0..3; all-zero slots are skipped
//
// Within a 48-bit leg slot, LSB first:
//   [0, 23]   strike tick, signed 24-bit, strike = 1.0001^tick
//   [24, 39]  range width in ticks, width = 2 * log_1.0001(range_factor)
//   [40]      is_put
//   [41]      is_long
//   [42, 45]  ratio (leg size), 1..15; 0 only in empty slots
//   [46, 47]  reserved, must be zero
struct TokenId {
    std::array<std::uint64_t, 4> words{};
    friend bool operator==(const TokenId&, const TokenId&) = default;
    friend auto operator<=>(const TokenId&, const TokenId&) = default;
};

std::string token_to_hex(const TokenId& id);

// Accepts exactly 64 hex digits, with an optional 0x prefix.
TokenId token_from_hex(const std::string& hex);

struct DecodedToken {
    std::uint64_t pool_id = 0;
    std::vector<Leg> legs;
};

// Quantization between continuous leg parameters and the packed fields.
std::int32_t strike_to_tick(double strike);
double tick_to_strike(std::int32_t tick);
std::int32_t range_factor_to_width(double range_factor);
double width_to_range_factor(std::int32_t width);

// Snaps a leg's strike and range factor onto the tick grid. Size is kept
// as-is; it must already be an integer ratio to be encodable.
Leg quantize_leg(const Leg& leg);

TokenId encode_token(std::uint64_t pool_id, const std::vector<Leg>& legs);

// Throws MalformedTokenError on nonzero reserved bits, a nonzero slot with
// ratio 0, or a token with no legs at all. The traded pair is not part of
// the encoding; callers carry it separately.
DecodedToken decode_token(const TokenId& id);

Position decode_position(const TokenId& id, const TokenPair& pair);

}  // namespace panopt
