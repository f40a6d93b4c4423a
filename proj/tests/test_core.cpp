#include <doctest.h>

#include "support.hpp"

using namespace jumprl;

TEST_CASE("memory reads back the last write and defaults to zero") {
    const Memory empty;
    CHECK(mem_read(Word{3}, mem_write(Word{3}, Word{5}, empty)) == Word{5});
    CHECK(mem_read(Word{4}, mem_write(Word{3}, Word{5}, empty)) == Word{0});
    CHECK(mem_read(Word{3}, mem_write(Word{3}, Word{7}, mem_write(Word{3}, Word{5}, empty))) == Word{7});
    CHECK(mem_read(Word{9}, empty) == Word{0});
}

TEST_CASE("memory read-after-write and frame hold for random instances") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> addr(-6, 6), val(-20, 20);
    for (int i = 0; i < 2000; ++i) {
        Memory m;
        for (int k = 0; k < 4; ++k) {
            m = mem_write(Word{addr(rng)}, Word{val(rng)}, m);
        }
        const Addr a{addr(rng)}, a2{addr(rng)};
        const Word w{val(rng)};
        const Word got = mem_read(a, mem_write(a2, w, m));
        CHECK(got == (a == a2 ? w : mem_read(a, m)));
    }
}

TEST_CASE("writing zero is indistinguishable from never writing") {
    const Memory m = mem_write(Word{1}, Word{0}, mem_write(Word{1}, Word{4}, Memory{}));
    CHECK(m == Memory{});
}

TEST_CASE("word operations wrap, compare signed and divide") {
    const Width w8(8);
    CHECK(word_op(BinaryOp::Add, w8.wrap(std::uint64_t{255}), Word{1}, w8) == Word{0});
    CHECK(word_op(BinaryOp::Add, Word{-1}, Word{1}) == Word{0});
    CHECK(word_op(BinaryOp::Lt, Word{-1}, Word{0}) == Word{1});
    CHECK(word_op(BinaryOp::Mod, Word{13}, Word{5}) == Word{3});
    CHECK(word_op(BinaryOp::Mul, Word{100}, Word{3}, w8) == Word{44});
    CHECK_THROWS_AS(word_op(BinaryOp::Div, Word{1}, Word{0}), ArithmeticFault);
    CHECK_THROWS_AS(word_op(BinaryOp::Mod, Word{1}, Word{0}), ArithmeticFault);
    CHECK_THROWS_AS(Width(0), std::invalid_argument);
    CHECK_THROWS_AS(Width(65), std::invalid_argument);
}

TEST_CASE("comparison results are always 0 or 1") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> val(INT64_MIN, INT64_MAX);
    for (auto op : {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Gt, BinaryOp::Ge,
                    BinaryOp::Sep, BinaryOp::Alias, BinaryOp::And, BinaryOp::Or}) {
        for (int i = 0; i < 200; ++i) {
            const auto r = word_op(op, Word{val(rng)}, Word{val(rng) % 3}).value();
            CHECK((r == 0 || r == 1));
        }
    }
}

TEST_CASE("domains parse as half-open intervals") {
    CHECK(parse_domain("0..16") == Domain{0, 16});
    CHECK(parse_domain("-8..8") == Domain{-8, 8});
    CHECK(parse_domain("-1..4").size() == 5);
    CHECK_THROWS(parse_domain("8"));
}

TEST_CASE("programs are checked for resolvable targets on construction") {
    std::map<Addr, Block> blocks;
    blocks[Word{0}] = Block{{}, Jump{Expr::var("x"), Word{1}, Word{2}}};
    CHECK_THROWS_AS(Program(Word{0}, blocks), ProgramError);
    CHECK_THROWS_AS(Program(Word{5}, {{Word{0}, Block{}}}), ProgramError);
    CHECK_NOTHROW(Program(Word{0}, {{Word{0}, Block{}}}));
}
