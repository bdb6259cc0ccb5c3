#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tsplab/certificates.hpp"
#include "tsplab/heuristics.hpp"
#include "tsplab/instances.hpp"

using namespace tsplab;

namespace {

Certificate prefix_of(const std::vector<TraceEvent>& trace, std::size_t len) {
    Certificate c;
    for (std::size_t i = 0; i < len; ++i) c.edges.push_back(trace[i].edge);
    return c;
}

void expect_equivalent(const Verdict& fast, const Verdict& brute, const Instance& inst) {
    ASSERT_EQ(fast.pass, brute.pass);
    ASSERT_EQ(fast.fail_step, brute.fail_step);
    ASSERT_EQ(fast.witness.has_value(), brute.witness.has_value());
    if (fast.witness) {
        EXPECT_EQ(inst.key(fast.witness->u, fast.witness->v), inst.key(brute.witness->u, brute.witness->v));
    }
}

}  // namespace

TEST(VerifyGreedyRun, GridCertificatesPass) {
    for (int k = 0; k <= 3; ++k) {
        for (auto kind : {GkKind::l1(), GkKind::l2(), GkKind::lp(3), GkKind::graphic()}) {
            const auto [inst, meta] = gen_gk(k, kind);
            const Verdict v = verify_greedy_run(inst, gk_certificate(k));
            EXPECT_TRUE(v) << "k=" << k << " " << kind.label() << ": " << v.reason;
        }
    }
}

TEST(VerifyGreedyRun, LongEdgeMovedToFrontFails) {
    const auto [inst, meta] = gen_gk(1, GkKind::graphic());
    Certificate cert = gk_certificate(1);
    const Edge last = cert.edges.back();
    cert.edges.pop_back();
    cert.edges.insert(cert.edges.begin(), last);
    const Verdict v = verify_greedy_run(inst, cert);
    EXPECT_FALSE(v);
    EXPECT_EQ(v.fail_step, 1u);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(inst.key(v.witness->u, v.witness->v).value, 1);
}

TEST(VerifyGreedyRun, EmptyCertificatePasses) {
    const Verdict v = verify_greedy_run(gen_gk(0, GkKind::l1()).instance, Certificate{});
    EXPECT_TRUE(v);
    EXPECT_EQ(v.stats.edge_count, 0u);
    EXPECT_EQ(v.stats.total.scaled, 0);
}

TEST(VerifyGreedyRun, BadIdsAndDuplicatesThrow) {
    const Instance inst = gen_gk(0, GkKind::l1()).instance;
    Certificate out_of_range;
    out_of_range.edges = {{0, 8}};
    EXPECT_THROW((void)verify_greedy_run(inst, out_of_range), Error);
    Certificate dup;
    dup.edges = {{0, 1}, {1, 0}};
    EXPECT_THROW((void)verify_greedy_run(inst, dup), Error);
}

TEST(VerifyGreedyRun, FeasibilityViolationsReported) {
    const Instance inst = gen_one_two(5);
    Certificate cycle;
    cycle.edges = {{0, 1}, {1, 2}, {0, 2}};  // closes a triangle early
    const Verdict v = verify_greedy_run(inst, cycle);
    EXPECT_FALSE(v);
    EXPECT_EQ(v.fail_step, 3u);
    EXPECT_FALSE(v.witness);
}

TEST(VerifyGreedyRun, FastMatchesBruteForceOnGridLevels) {
    for (int k = 0; k <= 2; ++k) {
        for (auto kind : {GkKind::l1(), GkKind::l2(), GkKind::graphic()}) {
            const auto [inst, meta] = gen_gk(k, kind);
            Certificate cert = gk_certificate(k);
            expect_equivalent(verify_greedy_run(inst, cert), verify_greedy_run_bruteforce(inst, cert), inst);
            std::swap(cert.edges[0], cert.edges.back());
            expect_equivalent(verify_greedy_run(inst, cert), verify_greedy_run_bruteforce(inst, cert), inst);
        }
    }
}

TEST(VerifyGreedyRun, FastMatchesBruteForceOnRandomCertificates) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng() % 48;
        const Instance inst = Instance::explicit_matrix("rnd", oracle::random_metric(n, 5, rng));
        const Tour tour = greedy_tour(inst, SeededRandom{rng()});
        Certificate cert = prefix_of(tour.trace, 1 + rng() % n);
        if (rng() % 2) {
            // replace a random position by a random non-trace edge
            const std::size_t pos = rng() % cert.edges.size();
            const CityId a = rng() % n, b = rng() % n;
            if (a != b && std::find(cert.edges.begin(), cert.edges.end(), Edge{a, b}) == cert.edges.end()) {
                cert.edges[pos] = {a, b};
            }
        }
        expect_equivalent(verify_greedy_run(inst, cert), verify_greedy_run_bruteforce(inst, cert), inst);
    }
}

TEST(VerifyCwRun, HubCertificatesPass) {
    for (int k = 0; k <= 2; ++k) {
        const auto [inst, meta, hub] = gen_cw_instance(k);
        const Verdict v = verify_cw_run(inst, hub.hub_id, cw_certificate(k));
        EXPECT_TRUE(v) << v.reason;
        EXPECT_EQ(v.stats.total.scaled, cw_certificate(k).expected_length);
    }
}

TEST(VerifyCwRun, LowSavingsPairFirstFails) {
    const auto [inst, meta, hub] = gen_cw_instance(1);
    Certificate cert = cw_certificate(1);
    std::swap(cert.edges.front(), cert.edges.back());
    const Verdict v = verify_cw_run(inst, hub.hub_id, cert);
    EXPECT_FALSE(v);
    EXPECT_EQ(v.fail_step, 1u);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(savings(inst, hub.hub_id, v.witness->u, v.witness->v), 2 * 27 - 2);
}

TEST(VerifyCwRun, EmptyAndHubPairs) {
    const auto [inst, meta, hub] = gen_cw_instance(0);
    EXPECT_TRUE(verify_cw_run(inst, hub.hub_id, Certificate{}));
    Certificate with_hub;
    with_hub.edges = {{0, hub.hub_id}};
    EXPECT_FALSE(verify_cw_run(inst, hub.hub_id, with_hub));
}

TEST(VerifyCwRun, FastMatchesBruteForce) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + rng() % 20;
        const Instance inst = Instance::explicit_matrix("rnd", oracle::random_metric(n, 6, rng));
        const CityId hub = rng() % n;
        const Tour tour = clarke_wright(inst, hub, SeededRandom{rng()});
        Certificate cert = prefix_of(tour.trace, 1 + rng() % tour.trace.size());
        if (rng() % 2) std::reverse(cert.edges.begin(), cert.edges.end());
        const Verdict fast = verify_cw_run(inst, hub, cert);
        const Verdict brute = verify_cw_run_bruteforce(inst, hub, cert);
        ASSERT_EQ(fast.pass, brute.pass);
        ASSERT_EQ(fast.fail_step, brute.fail_step);
        if (trial % 2 == 0) {
            EXPECT_TRUE(verify_cw_run(inst, hub, prefix_of(tour.trace, tour.trace.size())));
        }
    }
}

TEST(CertificateStats, LevelTwoAudit) {
    const auto [inst, meta] = gen_gk(2, GkKind::graphic());
    const CertificateAudit audit = certificate_stats(inst, gk_certificate(2));
    EXPECT_TRUE(audit.ok());
    EXPECT_EQ(audit.stats.total.scaled, 107);
    for (const auto& [len, count] : audit.stats.length_histogram) EXPECT_TRUE(len == 1 || len == 3 || len == 9);
    EXPECT_EQ(audit.endpoints, (std::vector<CityId>{std::min(meta.s_id, meta.r_id), std::max(meta.s_id, meta.r_id)}));
}

TEST(CertificateStats, LevelOneHistogram) {
    const CertificateAudit audit = certificate_stats(gen_gk(1, GkKind::l1()).instance, gk_certificate(1));
    EXPECT_EQ(audit.stats.length_histogram, (std::map<std::int64_t, std::size_t>{{1, 23}, {3, 2}}));
}

TEST(CertificateStats, OneTwo) {
    const CertificateAudit audit = certificate_stats(gen_one_two(7), one_two_certificate(7));
    EXPECT_TRUE(audit.ok());
    EXPECT_EQ(audit.stats.total.scaled, 4);
    EXPECT_EQ(audit.stats.length_histogram, (std::map<std::int64_t, std::size_t>{{1, 4}}));
}

TEST(CertificateStats, HubFamily) {
    const auto [inst, meta, hub] = gen_cw_instance(1);
    const CertificateAudit audit = certificate_stats(inst, cw_certificate(1));
    EXPECT_TRUE(audit.ok());
    EXPECT_EQ(audit.stats.total.scaled, 58);
}

TEST(CertificateStats, ItemizesStructuralFailures) {
    const auto [inst, meta] = gen_gk(1, GkKind::l1());
    Certificate cert = gk_certificate(1);
    cert.edges.pop_back();
    const CertificateAudit audit = certificate_stats(inst, cert);
    EXPECT_FALSE(audit.ok());
    EXPECT_GE(audit.failures.size(), 3u);  // coverage, endpoints, totals
}
