#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "tsplab/certificates.hpp"
#include "tsplab/instances.hpp"

using namespace tsplab;

TEST(GenGk, LevelZeroLabels) {
    const auto [inst, meta] = gen_gk(0, GkKind::graphic());
    EXPECT_EQ(inst.size(), 8u);
    EXPECT_EQ(meta.point(meta.s_id), (GridPoint{1, 1}));
    EXPECT_EQ(meta.point(meta.r_id), (GridPoint{3, 0}));
}

TEST(GenGk, LevelOneGeometry) {
    const auto [inst, meta] = gen_gk(1, GkKind::l1());
    EXPECT_EQ(inst.size(), 26u);
    EXPECT_EQ(meta.width, 13);
    // s_1 sits on the separator column of the recursion, which is w_0 = 4
    EXPECT_EQ(meta.point(meta.s_id), (GridPoint{4, 1}));
    EXPECT_EQ(meta.point(meta.r_id), (GridPoint{12, 0}));
}

TEST(GenGk, CityCount) {
    EXPECT_EQ(gen_gk(2, GkKind::l2()).instance.size(), 80u);
    EXPECT_EQ(gen_gk(3, GkKind::l1()).instance.size(), 242u);
}

TEST(GenGk, LevelAboveCapThrows) {
    try {
        (void)gen_gk(7, GkKind::l1());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Capacity);
    }
}

TEST(GkCertificate, BaseCase) {
    const Certificate cert = gk_certificate(0);
    EXPECT_EQ(cert.edges.size(), 7u);
    EXPECT_EQ(cert.expected_length, 7);
}

TEST(GkCertificate, LevelOneRecursionAudit) {
    const Certificate cert = gk_certificate(1);
    const auto [inst, meta] = gen_gk(1, GkKind::l1());
    ASSERT_EQ(cert.edges.size(), 25u);  // 3*7 + 4
    std::map<std::int64_t, int> hist;
    std::int64_t total = 0;
    for (const auto& e : cert.edges) {
        const std::int64_t len = inst.key(e.u, e.v).value;
        ++hist[len];
        total += len;
    }
    EXPECT_EQ(total, 3 * 7 + 2 * 1 + 2 * 3);
    EXPECT_EQ(hist, (std::map<std::int64_t, int>{{1, 23}, {3, 2}}));
}

TEST(GkCertificate, ShapeInvariants) {
    for (int k = 0; k <= 4; ++k) {
        const Certificate cert = gk_certificate(k);
        const GkMeta meta = gk_meta(k);
        const std::size_t n = meta.city_count();
        EXPECT_EQ(cert.edges.size(), n - 1);

        // path s_k .. r_k covering every city, no repeated or cyclic edge
        SelectionState state(n);
        for (const auto& e : cert.edges) {
            ASSERT_EQ(state.check(e, false), Feasibility::Ok);
            state.add(e);
        }
        std::vector<CityId> ends;
        for (CityId v = 0; v < n; ++v) {
            ASSERT_GE(state.degree(v), 1);
            if (state.degree(v) == 1) ends.push_back(v);
        }
        EXPECT_EQ(ends, (std::vector<CityId>{std::min(meta.s_id, meta.r_id), std::max(meta.s_id, meta.r_id)}));

        for (auto kind : {GkKind::l1(), GkKind::l2(), GkKind::graphic()}) {
            const auto [inst, m] = gen_gk(k, kind);
            std::int64_t total = 0;
            std::int64_t prev = 0;
            for (const auto& e : cert.edges) {
                const Length len = inst.length(e.u, e.v);
                ASSERT_TRUE(len.exact);
                EXPECT_GE(len.scaled, prev);
                prev = len.scaled;
                std::int64_t p = 1;
                while (p < len.scaled) p *= 3;
                EXPECT_EQ(p, len.scaled);
                EXPECT_LE(len.scaled, detail::pow3(k));
                total += len.scaled;
            }
            EXPECT_EQ(total, (2 * k + 8) * detail::pow3(k) - 1);
        }
    }
}

TEST(GenCwInstance, LevelZero) {
    const auto [inst, meta, hub] = gen_cw_instance(0);
    EXPECT_EQ(inst.size(), 9u);
    EXPECT_EQ(inst.scale(), 2);
    for (CityId v = 0; v < 8; ++v) {
        EXPECT_EQ(inst.key(v, hub.hub_id).value, 9);
        EXPECT_DOUBLE_EQ(inst.length(v, hub.hub_id).value(), 4.5);
    }
    EXPECT_TRUE(validate_metric(inst.scaled_matrix()));
}

TEST(GenCwInstance, HubExceedsEveryGridDistance) {
    for (int k = 0; k <= 2; ++k) {
        const auto [inst, meta, hub] = gen_cw_instance(k);
        EXPECT_EQ(hub.hub_len_scaled, detail::pow3(k + 2));
        for (CityId u = 0; u < hub.hub_id; ++u) {
            for (CityId v = u + 1; v < hub.hub_id; ++v) EXPECT_LT(inst.key(u, v).value, hub.hub_len_scaled);
        }
        EXPECT_TRUE(validate_metric(inst.scaled_matrix()));
    }
    const auto [inst1, meta1, hub1] = gen_cw_instance(1);
    EXPECT_EQ(inst1.size(), 27u);
    EXPECT_EQ(hub1.hub_len_scaled, 27);
}

TEST(CwCertificate, SameEdgesDoubledLength) {
    for (int k = 0; k <= 2; ++k) {
        const Certificate g = gk_certificate(k);
        const Certificate c = cw_certificate(k);
        EXPECT_TRUE(g.edges == c.edges);
        EXPECT_EQ(c.expected_length, 2 * g.expected_length);
        EXPECT_EQ(c.family, Family::CwGk);
    }
}

TEST(GenOneTwo, FiveCities) {
    const Instance inst = gen_one_two(5);
    // names {1,2},{2,3},{3,4},{4,5},{5,1},{1,3},{3,5}
    const std::vector<std::pair<int, int>> ones = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 3}, {3, 5}};
    for (int a = 1; a <= 5; ++a) {
        for (int b = a + 1; b <= 5; ++b) {
            const bool one = std::any_of(ones.begin(), ones.end(), [&](auto pr) {
                return (pr.first == a && pr.second == b) || (pr.first == b && pr.second == a);
            });
            EXPECT_EQ(inst.key(a - 1, b - 1).value, one ? 1 : 2) << a << "," << b;
        }
    }
    EXPECT_TRUE(validate_metric(inst.scaled_matrix()));
}

TEST(GenOneTwo, SevenCitiesUnitEdgeCount) {
    const Instance inst = gen_one_two(7);
    int ones = 0;
    for (CityId u = 0; u < 7; ++u) {
        for (CityId v = u + 1; v < 7; ++v) ones += inst.key(u, v).value == 1;
    }
    EXPECT_EQ(ones, 7 + 3);
}

TEST(GenOneTwo, RejectsEvenOrSmall) {
    EXPECT_THROW((void)gen_one_two(6), Error);
    EXPECT_THROW((void)gen_one_two(3), Error);
    EXPECT_THROW((void)one_two_certificate(8), Error);
}

TEST(OneTwoCertificate, Patterns) {
    const Certificate five = one_two_certificate(5);
    EXPECT_TRUE(five.edges == (std::vector<Edge>{{1, 2}, {0, 4}, {2, 4}}));
    EXPECT_EQ(five.expected_length, 3);
    EXPECT_EQ(one_two_certificate(7).edges.size(), 4u);
    EXPECT_TRUE(one_two_certificate(9).edges == (std::vector<Edge>{{1, 2}, {0, 8}, {2, 4}, {4, 6}, {6, 8}}));
}

TEST(OneTwoCertificate, UnitEdgesFormPaths) {
    for (std::int64_t n = 5; n <= 15; n += 2) {
        const Instance inst = gen_one_two(n);
        SelectionState state(inst.size());
        for (const auto& e : one_two_certificate(n).edges) {
            EXPECT_EQ(inst.key(e.u, e.v).value, 1);
            ASSERT_EQ(state.check(e, false), Feasibility::Ok);
            state.add(e);
        }
    }
}
