#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace vasrev;
using testutil::cfg;
using testutil::random_vas;

TEST_CASE("projection eliminates the indexed slots") {
    Config v = cfg("1000 1");
    CHECK(project(v, {0}) == io::parse_config("* 1"));
    CHECK(project(io::parse_config("4 *"), {0}) == io::parse_config("* *"));
    CHECK(project(v, {}) == v);
    CHECK_THROWS_AS(project(v, {2}), IndexOutOfRange);
}

TEST_CASE("projection is functorial") {
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        int d = 1 + static_cast<int>(rng() % 4);
        std::vector<Slot> slots(static_cast<std::size_t>(d));
        for (auto& s : slots)
            if (rng() % 4 == 0)
                s = std::nullopt;
            else
                s = static_cast<Int>(rng() % 9) - 4;
        ProjVec v(slots);
        IndexSet l, m, lm;
        for (int i = 0; i < d; ++i) {
            if (rng() % 2) l.insert(i);
            if (rng() % 2) m.insert(i);
        }
        lm = l;
        lm.insert(m.begin(), m.end());
        CHECK(project(project(v, l), m) == project(v, lm));
        CHECK(project(project(v, l), l) == project(v, l));
    }
}

TEST_CASE("slot order treats the projected marker as maximal") {
    CHECK(leq(cfg("0 1"), cfg("0 *")));
    CHECK(leq(cfg("0 *"), cfg("0 *")));
    CHECK_FALSE(leq(io::parse_config("* 0"), io::parse_config("0 *")));
    CHECK_FALSE(leq(cfg("2 0"), cfg("1 0")));
}

TEST_CASE("scaling keeps projected slots, including by zero") {
    ProjVec v = io::parse_config("* 1");
    CHECK(v.scale(0).star_set() == IndexSet{0});
    CHECK(v.scale(0) == io::parse_config("* 0"));
    CHECK(v.scale(3) == io::parse_config("* 3"));
}

TEST_CASE("arithmetic requires identical projected slots") {
    ProjVec a = io::parse_config("* 5");
    ProjVec b = io::parse_config("* 2");
    CHECK(a - b == io::parse_config("* 3"));
    CHECK(a + b == io::parse_config("* 7"));
    CHECK_THROWS_AS(a + cfg("1 1"), SlotSetMismatch);
    CHECK_THROWS_AS(a + io::parse_config("1 * *"), DimensionMismatch);
}

TEST_CASE("displacement folds the word") {
    Word w{{-1, 1}, {-1, 1}};
    CHECK(displacement(2, w) == IntVec{-2, 2});
    CHECK(displacement(2, {}) == IntVec{0, 0});

    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        Word word;
        IntVec expect(static_cast<std::size_t>(d), 0);
        for (int k = static_cast<int>(rng() % 7); k-- > 0;) {
            IntVec a(static_cast<std::size_t>(d));
            for (std::size_t i = 0; i < a.size(); ++i) {
                a[i] = static_cast<Int>(rng() % 7) - 3;
                expect[i] += a[i];
            }
            word.push_back(std::move(a));
        }
        CHECK(displacement(d, word) == expect);
        Word rev(word.rbegin(), word.rend());
        CHECK(displacement(d, rev) == expect);
    }
}

TEST_CASE("runs execute deterministically and stay non-negative") {
    auto r = run(cfg("2 0"), {{-1, 1}, {-1, 1}});
    REQUIRE(r.has_value());
    REQUIRE(r->configs.size() == 3);
    CHECK(r->configs[0] == cfg("2 0"));
    CHECK(r->configs[1] == cfg("1 1"));
    CHECK(r->configs[2] == cfg("0 2"));

    auto empty = run(cfg("3 4"), {});
    REQUIRE(empty.has_value());
    CHECK(empty->configs.size() == 1);

    CHECK_FALSE(run(cfg("0 0"), {{-1, 0}}).has_value());
}

TEST_CASE("last minus first equals the projected displacement") {
    std::mt19937 rng(13);
    for (int it = 0; it < 200; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        Vas vas = random_vas(rng, d, 4, 2);
        Config start = testutil::random_config(rng, d, 4);
        Word w;
        for (int k = static_cast<int>(rng() % 6); k-- > 0;)
            w.push_back(vas.action(rng() % vas.size()));
        auto r = run(start, w);
        if (!r.has_value()) continue;
        CHECK(r->last() - r->first() == displacement_proj(d, w, start.star_set()));
    }
}

TEST_CASE("run projection commutes") {
    std::mt19937 rng(17);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 120; ++it) {
        int d = 1 + static_cast<int>(rng() % 3);
        Vas vas = random_vas(rng, d, 4, 2);
        Config start = testutil::random_config(rng, d, 3);
        Word w;
        for (int k = static_cast<int>(rng() % 6); k-- > 0;)
            w.push_back(vas.action(rng() % vas.size()));
        auto r = run(start, w);
        if (!r.has_value()) continue;
        ++checked;
        IndexSet l;
        for (int i = 0; i < d; ++i)
            if (rng() % 2) l.insert(i);
        auto pr = run(project(start, l), w);
        REQUIRE(pr.has_value());
        for (std::size_t j = 0; j < r->configs.size(); ++j)
            CHECK(pr->configs[j] == project(r->configs[j], l));
    }
    CHECK(checked >= 120);
}

TEST_CASE("run lifting from a projected run") {
    Run lifted = lift_run(cfg("2 0"), {0}, {{-1, 1}, {-1, 1}});
    CHECK(lifted.configs == std::vector<Config>{cfg("2 0"), cfg("1 1"), cfg("0 2")});

    SECTION("empty elimination set is plain execution") {
        Word w{{-1, 1}};
        Run r = lift_run(cfg("1 0"), {}, w);
        CHECK(r.configs == run(cfg("1 0"), w)->configs);
    }

    SECTION("missing projected run is a precondition violation") {
        CHECK_THROWS_AS(lift_run(cfg("5 0"), {0}, Word{{0, -1}}), PreconditionFailed);
    }

    SECTION("slot below the threshold is a precondition violation") {
        CHECK_THROWS_AS(lift_run(cfg("1 0"), {0}, Word{{-1, 1}, {-1, 1}}), PreconditionFailed);
    }
}

TEST_CASE("run lifting is sound on random instances") {
    std::mt19937 rng(19);
    int checked = 0;
    for (int it = 0; it < 2000 && checked < 200; ++it) {
        int d = 1 + static_cast<int>(rng() % 4);
        Vas vas = random_vas(rng, d, 5, 3);
        Word w;
        for (int k = static_cast<int>(rng() % 9); k-- > 0;)
            w.push_back(vas.action(rng() % vas.size()));
        IndexSet l;
        for (int i = 0; i < d; ++i)
            if (rng() % 2) l.insert(i);
        Int floor_needed = static_cast<Int>(w.size()) * word_norm_inf(w);
        IntVec raw(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            raw[static_cast<std::size_t>(i)] =
                (l.count(i) ? floor_needed : 0) + static_cast<Int>(rng() % 4);
        Config c = Config::from_ints(raw);
        if (!run(project(c, l), w).has_value()) continue;
        ++checked;
        Run lifted = lift_run(c, l, w);
        auto oracle = run(c, w);  // replay oracle
        REQUIRE(oracle.has_value());
        CHECK(lifted.configs == oracle->configs);
        for (std::size_t j = 0; j < lifted.configs.size(); ++j)
            CHECK(project(lifted.configs[j], l) == run(project(c, l), w)->configs[j]);
    }
    CHECK(checked >= 200);
}

TEST_CASE("vas validation") {
    CHECK_THROWS_AS(Vas(0, {}), PreconditionFailed);
    CHECK_THROWS_AS(Vas(2, {{1}}), DimensionMismatch);
    CHECK_THROWS_AS(Vas(1, {{1}, {1}}), PreconditionFailed);
    Vas vas(2, {{1, -1}, {-1, 1}});
    CHECK(vas.norm_inf() == 1);
    CHECK(vas.action_index({-1, 1}) == 1);
    CHECK_FALSE(vas.action_index({2, 2}).has_value());
}

TEST_CASE("norms ignore projected slots") {
    CHECK(io::parse_config("* *").norm_inf() == 0);
    CHECK(io::parse_config("* 7").norm_inf() == 7);
    CHECK(ProjVec::from_ints({-9, 2}).norm_inf() == 9);
}
