#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name)
{
    const auto p = fs::temp_directory_path() / ("qmetallic_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    return p;
}

} // namespace

TEST(SeriesJson, RoundTripAndShape)
{
    const LaurentSeries s(-2, {BigRat(1), make_rat(BigInt(-3), BigInt(4)), BigRat(0), BigRat(7)}, 2);
    const auto j = io::series_to_json(s);
    EXPECT_EQ(j.dump(), R"({"valuation":-2,"order":2,"coeffs":["1","-3/4","0","7"]})");
    EXPECT_EQ(io::series_from_json(j), s);
    EXPECT_THROW((void)io::series_to_json(LaurentSeries::exact(0, {BigRat(1)})), Error);
    EXPECT_THROW((void)io::series_from_json(io::Json::parse(R"({"valuation":0,"order":3,"coeffs":["1"]})")), Error);
    EXPECT_THROW((void)io::series_from_json(io::Json::parse(R"({"valuation":0,"order":1,"coeffs":["1.5"]})")), Error);
}

TEST(TableFormats, JsonCsv)
{
    const auto t = coeffs_convolution(1, 17);
    const auto j = io::table_to_json(t);
    EXPECT_EQ(j["coeffs"][9], "-82");
    const auto back = io::table_from_json(j);
    EXPECT_EQ(back.values, t.values);
    EXPECT_EQ(back.n, 1);
    EXPECT_EQ(io::series_from_json(j), t.series());
    const auto csv = io::table_to_csv(t);
    EXPECT_EQ(csv.substr(0, 24), "l,kappa\n0,1\n1,0\n2,1\n3,-1");
}

TEST(RootsJson, StringsAndPrecision)
{
    const auto r = singularity_report(1, 128);
    const auto j = io::singularity_to_json(r);
    ASSERT_EQ(j["roots"].size(), 2U);
    EXPECT_TRUE(j["roots"][0]["re"].is_string());
    EXPECT_EQ(j["roots"][0]["precision_bits"], 128);
    EXPECT_EQ(j["radius"].get<std::string>().substr(0, 12), "0.3819660112");
}

TEST(HankelCsv, Layout)
{
    const auto k = coeffs_p_recurrence(1, 20).values;
    const auto csv = io::hankel_to_csv(k, 2, 3);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,s0,s1,s2");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Hash, KnownDigest)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, StoreLoadRoundTrip)
{
    const auto dir = scratch("roundtrip");
    CoeffCache cache(dir);
    const auto t = coeffs_p_recurrence(2, 1000);
    cache.store(t);
    const auto back = cache.load(2, Engine::PRecurrence);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->values, t.values);
    EXPECT_EQ(back->upto, 1000);
    EXPECT_FALSE(cache.load(3, Engine::PRecurrence).has_value());
    for (const auto &e : fs::directory_iterator(dir)) {
        EXPECT_EQ(e.path().extension(), ".json");
    }
    fs::remove_all(dir);
}

TEST(Cache, HandEditDetected)
{
    const auto dir = scratch("edit");
    CoeffCache cache(dir);
    cache.store(coeffs_p_recurrence(2, 100));
    const auto path = cache.file_for(2, Engine::PRecurrence);
    std::string text = read_file(path);
    const auto pos = text.find("\"-2\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 4, "\"-3\"");
    std::ofstream(path, std::ios::trunc) << text;
    try {
        (void)cache.load(2, Engine::PRecurrence);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::CacheCorrupt);
    }
    EXPECT_THROW((void)cache.get(2, 50, Engine::PRecurrence), Error);
    std::string why;
    const auto repaired = cache.get_or_repair(2, 50, Engine::PRecurrence, &why);
    EXPECT_NE(why.find("hash mismatch"), std::string::npos);
    EXPECT_EQ(repaired.values, coeffs_convolution(2, 50).values);
    EXPECT_NO_THROW((void)cache.load(2, Engine::PRecurrence));
    std::ofstream(path, std::ios::trunc) << "{ not json";
    EXPECT_THROW((void)cache.load(2, Engine::PRecurrence), Error);
    fs::remove_all(dir);
}

TEST(Cache, PrefixInvariantCheckedEvenWithValidHash)
{
    const auto dir = scratch("prefix");
    CoeffCache cache(dir);
    auto t = coeffs_convolution(3, 30);
    t.values[3] = 5;
    cache.store(t);
    EXPECT_THROW((void)cache.load(3, Engine::Convolution), Error);
    fs::remove_all(dir);
}

TEST(Cache, ExtendFromStoredTail)
{
    const auto dir = scratch("extend");
    CoeffCache cache(dir);
    cache.store(coeffs_p_recurrence(4, 200));
    const auto t = cache.get(4, 600, Engine::PRecurrence);
    EXPECT_EQ(t.values, coeffs_convolution(4, 600).values);
    EXPECT_EQ(cache.load(4, Engine::PRecurrence)->upto, 600);
    const auto shorter = cache.get(4, 50, Engine::PRecurrence);
    EXPECT_EQ(shorter.upto, 50);
    EXPECT_EQ(cache.load(4, Engine::PRecurrence)->upto, 600);
    fs::remove_all(dir);
}

TEST(Cache, StaleVersionIgnored)
{
    const auto dir = scratch("version");
    CoeffCache cache(dir);
    cache.store(coeffs_convolution(1, 20));
    const auto path = cache.file_for(1, Engine::Convolution);
    auto doc = io::Json::parse(read_file(path));
    doc["format_version"] = kCacheFormatVersion + 1;
    std::ofstream(path, std::ios::trunc) << doc.dump();
    EXPECT_FALSE(cache.load(1, Engine::Convolution).has_value());
    fs::remove_all(dir);
}

TEST(Manifest, RoundTripAndStaleness)
{
    const auto dir = scratch("manifest");
    fs::create_directories(dir);
    RunManifest m;
    m.command = "tables";
    m.parameters = {{"which", "all"}, {"precision_bits", "256"}};
    const std::string content = "l,ratio\n";
    write_file_atomic(dir / "t.csv", content);
    m.add_output("t.csv", content);
    const auto back = RunManifest::from_json(m.to_json());
    EXPECT_EQ(back.to_json(), m.to_json());
    EXPECT_TRUE(back.stale_outputs(dir).empty());
    EXPECT_EQ(m.timestamp.size(), 20U);
    EXPECT_EQ(m.timestamp.back(), 'Z');
    write_file_atomic(dir / "t.csv", "changed");
    EXPECT_EQ(back.stale_outputs(dir).size(), 1U);
    fs::remove_all(dir);
}
