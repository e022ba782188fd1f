#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "panopt/errors.hpp"
#include "panopt/token_codec.hpp"

using namespace panopt;

namespace {

Leg grid_leg(std::int32_t tick, std::int32_t width, bool is_put, bool is_long,
             double size) {
    return Leg{tick_to_strike(tick), width_to_range_factor(width), is_put, is_long,
               size};
}

}  // namespace

TEST_CASE("hex rendering round-trips and is 64 digits") {
    TokenId id;
    id.words = {0x0123456789abcdefull, 0xfedcba9876543210ull, 0x1ull, 0x0ull};
    const std::string hex = token_to_hex(id);
    CHECK(hex.size() == 64);
    CHECK(hex ==
          "0000000000000000000000000000000"
          "1fedcba98765432100123456789abcdef");
    CHECK(token_from_hex(hex) == id);
    CHECK(token_from_hex("0x" + hex) == id);
    CHECK_THROWS_AS(token_from_hex(hex.substr(1)), MalformedTokenError);
    CHECK_THROWS_AS(token_from_hex(std::string(63, '0') + "g"), MalformedTokenError);
}

TEST_CASE("quantization is an involution on the tick grid") {
    for (std::int32_t tick : {-500000, -1, 0, 1, 76013, 2000000}) {
        const double strike = tick_to_strike(tick);
        CHECK(strike_to_tick(strike) == tick);
    }
    for (std::int32_t width : {0, 1, 2, 60, 1906, 40000}) {
        const double r = width_to_range_factor(width);
        CHECK(range_factor_to_width(r) == width);
    }
    // 2000 lands on tick 76013, within a tenth of a basis point
    CHECK(strike_to_tick(2000.0) == 76013);
    CHECK(tick_to_strike(76013) == doctest::Approx(2000.0).epsilon(1e-4));
}

TEST_CASE("single leg round-trip preserves every field") {
    const Leg leg = grid_leg(76013, 1906, true, false, 3.0);
    const TokenId id = encode_token(77, {leg});
    const DecodedToken dec = decode_token(id);
    CHECK(dec.pool_id == 77);
    REQUIRE(dec.legs.size() == 1);
    CHECK(dec.legs[0].strike == leg.strike);
    CHECK(dec.legs[0].range_factor == leg.range_factor);
    CHECK(dec.legs[0].is_put == leg.is_put);
    CHECK(dec.legs[0].is_long == leg.is_long);
    CHECK(dec.legs[0].size == leg.size);
}

TEST_CASE("four random legs round-trip exactly") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<std::int32_t> tick_dist(-800000, 800000);
    std::uniform_int_distribution<std::int32_t> width_dist(0, 4000);
    std::uniform_int_distribution<int> ratio_dist(1, 15);
    std::uniform_int_distribution<int> flag(0, 1);

    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Leg> legs;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            legs.push_back(grid_leg(tick_dist(rng), width_dist(rng), flag(rng),
                                    flag(rng), ratio_dist(rng)));
        }
        const std::uint64_t pool = rng();
        const TokenId id = encode_token(pool, legs);
        const DecodedToken dec = decode_token(id);
        CHECK(dec.pool_id == pool);
        REQUIRE(dec.legs.size() == legs.size());
        for (std::size_t i = 0; i < legs.size(); ++i) {
            CHECK(dec.legs[i].strike == legs[i].strike);
            CHECK(dec.legs[i].range_factor == legs[i].range_factor);
            CHECK(dec.legs[i].is_put == legs[i].is_put);
            CHECK(dec.legs[i].is_long == legs[i].is_long);
            CHECK(dec.legs[i].size == legs[i].size);
        }
        CHECK(token_from_hex(token_to_hex(id)) == id);
    }
}

TEST_CASE("strikes off the grid snap to the nearest tick") {
    const Leg leg{2000.0, 1.2, false, true, 2.0};
    const TokenId id = encode_token(1, {leg});
    const DecodedToken dec = decode_token(id);
    CHECK(dec.legs[0].strike == doctest::Approx(2000.0).epsilon(1e-4));
    CHECK(dec.legs[0].range_factor == doctest::Approx(1.2).epsilon(1e-4));
    // quantize_leg matches what encode/decode does
    const Leg q = quantize_leg(leg);
    CHECK(q.strike == dec.legs[0].strike);
    CHECK(q.range_factor == dec.legs[0].range_factor);
    // quantization is idempotent
    const Leg qq = quantize_leg(q);
    CHECK(qq.strike == q.strike);
    CHECK(qq.range_factor == q.range_factor);
}

TEST_CASE("encoding range errors") {
    // fractional and out-of-range ratios
    CHECK_THROWS_AS(encode_token(1, {Leg{2000.0, 1.1, true, false, 2.5}}),
                    EncodingRangeError);
    CHECK_THROWS_AS(encode_token(1, {Leg{2000.0, 1.1, true, false, 16.0}}),
                    EncodingRangeError);
    // a range factor too wide for the 16-bit width field
    CHECK_THROWS_AS(encode_token(1, {Leg{2000.0, 30.0, true, false, 1.0}}),
                    EncodingRangeError);
    // too many legs
    std::vector<Leg> five(5, Leg{2000.0, 1.1, true, false, 1.0});
    CHECK_THROWS_AS(encode_token(1, five), CapacityError);
    CHECK_THROWS_AS(encode_token(1, {}), DomainError);
}

TEST_CASE("malformed tokens are rejected") {
    // no legs at all
    TokenId bare;
    bare.words[0] = 99;
    CHECK_THROWS_AS(decode_token(bare), MalformedTokenError);

    // reserved bits set in the first leg slot
    TokenId reserved = encode_token(1, {grid_leg(100, 10, true, false, 1.0)});
    reserved.words[1] |= std::uint64_t{1} << 46;
    CHECK_THROWS_AS(decode_token(reserved), MalformedTokenError);

    // slot with tick data but zero ratio
    TokenId zero_ratio;
    zero_ratio.words[1] = 0x123;  // tick bits only
    CHECK_THROWS_AS(decode_token(zero_ratio), MalformedTokenError);
}

TEST_CASE("legs may sit in any slots; zero slots are skipped") {
    // place one leg in slot 2 by hand: bits 160..207 live in words[2]
    const Leg leg = grid_leg(-250, 40, false, true, 7.0);
    const TokenId packed = encode_token(5, {leg});
    // slot 0 starts at bit 64 => low 48 bits of words[1]
    const std::uint64_t slot = packed.words[1] & ((std::uint64_t{1} << 48) - 1);
    TokenId moved;
    moved.words[0] = 5;
    const unsigned pos = 160 - 128;  // slot 2 begins at bit 160, mid words[2]
    moved.words[2] |= slot << pos;
    moved.words[3] |= slot >> (64 - pos);
    const DecodedToken dec = decode_token(moved);
    CHECK(dec.pool_id == 5);
    REQUIRE(dec.legs.size() == 1);
    CHECK(dec.legs[0].strike == leg.strike);
    CHECK(dec.legs[0].size == 7.0);
}

TEST_CASE("decode_position carries the supplied pair") {
    const TokenId id = encode_token(3, {grid_leg(1000, 20, true, false, 1.0)});
    const Position pos = decode_position(id, TokenPair{"USDC", "WBTC"});
    CHECK(pos.pair.numeraire == "USDC");
    CHECK(pos.pair.asset == "WBTC");
    REQUIRE(pos.legs.size() == 1);
}
