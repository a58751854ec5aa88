#include <doctest.h>

#include "k3mirror/error.hpp"
#include "k3mirror/weights.hpp"

using namespace k3;

TEST_CASE("normalize examples") {
    auto r = normalize({12, 8, 3, 1}, 24);
    CHECK(r.ws == WeightSystem{{12, 8, 3, 1}, 24});
    CHECK(r.perm == std::array<int, 4>{0, 1, 2, 3});

    auto s = normalize({2, 4, 6, 8}, 20);
    CHECK(s.ws == WeightSystem{{4, 3, 2, 1}, 10});

    auto t = normalize({5, 2, 2, 1}, 10);
    CHECK(t.ws == WeightSystem{{5, 2, 2, 1}, 10});

    CHECK_THROWS_AS(normalize({0, 1, 1, 1}, 3), Error);
}

TEST_CASE("normalize is idempotent") {
    for (const auto& f : all_families()) {
        auto again = normalize(f.ws.w, f.ws.d);
        CHECK(again.ws == f.ws);
    }
}

TEST_CASE("calabi-yau flag") {
    CHECK(is_calabi_yau(WeightSystem{{12, 8, 3, 1}, 24}));
    CHECK(is_calabi_yau(WeightSystem{{1, 1, 1, 1}, 4}));
    CHECK(!is_calabi_yau(WeightSystem{{1, 1, 1, 1}, 5}));
}

TEST_CASE("admissible families") {
    auto p13 = admissible_families(13);
    REQUIRE(p13.size() == 1);
    CHECK(p13[0].no == "87");
    CHECK(p13[0].ws == WeightSystem{{5, 4, 3, 1}, 13});

    auto p7 = admissible_families(7);
    bool has14 = false, has66 = false;
    for (const auto& f : p7) {
        if (f.no == "14") {
            has14 = true;
            CHECK(f.ws == WeightSystem{{21, 14, 6, 1}, 42});
        }
        if (f.no == "66") {
            has66 = true;
            CHECK(f.ws == WeightSystem{{3, 2, 1, 1}, 7});
        }
    }
    CHECK(has14);
    CHECK(has66);

    // distinct weight systems of the p=3 table, counted by hand
    CHECK(admissible_families(3).size() == 28);
    CHECK(admissible_families(5).size() == 10);
    CHECK(admissible_families(7).size() == 6);

    CHECK_THROWS_AS(admissible_families(11), Error);
    CHECK_THROWS_AS(admissible_families(2), Error);
}

TEST_CASE("family invariants") {
    CHECK(all_families().size() == 41);
    for (const auto& f : all_families()) {
        CHECK(is_calabi_yau(f.ws));
        for (int p : f.primes) {
            bool found = false;
            for (auto wi : f.ws.w)
                if ((long long)p * wi == f.ws.d) found = true;
            CHECK(found);
        }
    }
}
