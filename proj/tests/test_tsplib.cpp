#include <gtest/gtest.h>

#include "tsplab/instances.hpp"
#include "tsplab/tsplib.hpp"

using namespace tsplab;

namespace {

void expect_same_keys(const Instance& a, const Instance& b) {
    ASSERT_EQ(a.size(), b.size());
    for (CityId u = 0; u < a.size(); ++u) {
        for (CityId v = 0; v < a.size(); ++v) ASSERT_EQ(a.key(u, v), b.key(u, v)) << u << "," << v;
    }
}

std::string parse_error(const std::string& text) {
    try {
        (void)read_tsplib(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        return e.what();
    }
    ADD_FAILURE() << "expected a parse error";
    return {};
}

}  // namespace

TEST(Tsplib, RoundTripPreservesKeys) {
    for (auto kind : {GkKind::l1(), GkKind::l2(), GkKind::lp(3), GkKind::graphic()}) {
        const Instance inst = gen_gk(1, kind).instance;
        expect_same_keys(inst, read_tsplib(write_tsplib(inst)));
    }
    expect_same_keys(gen_one_two(7), read_tsplib(write_tsplib(gen_one_two(7))));
}

TEST(Tsplib, RoundTripPreservesScale) {
    const Instance inst = gen_cw_instance(0).instance;
    const Instance back = read_tsplib(write_tsplib(inst));
    EXPECT_EQ(back.scale(), 2);
    expect_same_keys(inst, back);
}

TEST(Tsplib, WriterFormat) {
    const std::string text = write_tsplib(gen_gk(0, GkKind::l1()).instance);
    EXPECT_NE(text.find("TYPE: TSP\n"), std::string::npos);
    EXPECT_NE(text.find("DIMENSION: 8\n"), std::string::npos);
    EXPECT_NE(text.find("EDGE_WEIGHT_TYPE: MAN_2D\n"), std::string::npos);
    EXPECT_NE(text.find("COMMENT: SCALE=1\n"), std::string::npos);
    EXPECT_NE(text.find("NODE_COORD_SECTION\n1 0 0\n"), std::string::npos);
    EXPECT_TRUE(text.ends_with("EOF\n"));
}

TEST(Tsplib, ReadsPlainTsplibSpacing) {
    const Instance inst = read_tsplib(
        "NAME : sq\nTYPE : TSP\nCOMMENT : plain file\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 3 4\n4 0 4\nEOF\n");
    EXPECT_EQ(inst.lp_exponent(), 2);
    EXPECT_EQ(inst.key(0, 2).value, 25);
}

TEST(Tsplib, TruncatedFileNamesMissingSection) {
    const std::string full = write_tsplib(gen_gk(0, GkKind::l1()).instance);
    const std::string truncated = full.substr(0, full.find("NODE_COORD_SECTION"));
    EXPECT_NE(parse_error(truncated).find("NODE_COORD_SECTION"), std::string::npos);

    const std::string matrix = write_tsplib(gen_one_two(5));
    EXPECT_NE(parse_error(matrix.substr(0, matrix.find("EDGE_WEIGHT_SECTION"))).find("EDGE_WEIGHT_SECTION"),
              std::string::npos);
    EXPECT_NE(parse_error(matrix.substr(0, matrix.size() - 12)).find("EDGE_WEIGHT_SECTION"), std::string::npos);
}

TEST(Tsplib, RejectsUnknownSectionsAndTypes) {
    parse_error("NAME: x\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 0\nEOF\n");
    parse_error("NAME: x\nTYPE: ATSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: MAN_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\nEOF\n");
    parse_error(
        "NAME: x\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: MAN_2D\nDISPLAY_DATA_SECTION\n1 0 0\n2 1 0\nEOF\n");
    parse_error("TYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\n"
                "EDGE_WEIGHT_SECTION\n1\nEOF\n");
}

TEST(Tsplib, RejectsAsymmetricMatrix) {
    const std::string msg = parse_error(
        "NAME: x\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n0 1\n2 0\nEOF\n");
    EXPECT_NE(msg.find("symmetric"), std::string::npos);
}

TEST(CertificateFile, RoundTripAndFormat) {
    const Certificate cert = gk_certificate(1);
    const std::string text = write_certificate(cert);
    EXPECT_TRUE(text.starts_with("FAMILY gk 1 29\n"));
    const Certificate back = read_certificate(text);
    EXPECT_EQ(back.family, Family::Gk);
    EXPECT_EQ(back.param, 1);
    EXPECT_EQ(back.expected_length, 29);
    EXPECT_TRUE(back.edges == cert.edges);
}

TEST(CertificateFile, MalformedInputs) {
    EXPECT_THROW((void)read_certificate(""), Error);
    EXPECT_THROW((void)read_certificate("FAMILY bogus 1 2\n"), Error);
    EXPECT_THROW((void)read_certificate("FAMILY gk 1 29\n1 2 3\n"), Error);
    EXPECT_THROW((void)read_certificate("FAMILY gk 1 29\n1 x\n"), Error);
}
