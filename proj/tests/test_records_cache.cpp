#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "cayley/cache.hpp"
#include "cayley/records.hpp"

using namespace cayley;

TEST_CASE("fmt_double is lossless and stable") {
    for (double v : {0.5, 2.0, 0.6180339887498949, -1.6180339887498949, 1e-300, 0.1}) {
        std::string s = fmt_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(fmt_double(2.0) == "2");
    CHECK(fmt_double(0.5) == "0.5");
}

TEST_CASE("table rendering") {
    Table t;
    t.columns = {"m", "lambda", "method"};
    t.numeric = {true, true, false};
    t.add_row({"0", "2", "exact"});
    t.add_row({"1", "0.5", "exact"});

    CHECK(render(t, OutFormat::csv) == "m,lambda,method\n0,2,exact\n1,0.5,exact\n");
    CHECK(render(t, OutFormat::tsv) == "# m\tlambda\tmethod\n0\t2\texact\n1\t0.5\texact\n");
    std::string j = render(t, OutFormat::json);
    CHECK(j.find("\"records\":[{\"m\":0,\"lambda\":2,\"method\":\"exact\"}") != std::string::npos);
    CHECK(j.find("\"schema_version\":1") != std::string::npos);

    t.headerless = true;
    CHECK(render(t, OutFormat::csv) == "0,2,exact\n1,0.5,exact\n");

    // nan is not a JSON number
    Table t2;
    t2.columns = {"x"};
    t2.numeric = {true};
    t2.add_row({"nan"});
    CHECK(render(t2, OutFormat::json).find("\"x\":null") != std::string::npos);
}

TEST_CASE("sweep fields match the pinned schema") {
    SweepRecord rec;
    rec.n = 5;
    rec.k = 1;
    rec.r = 2;
    rec.a = 0;
    rec.b = 2;
    rec.c = 0;
    rec.d = 1;
    rec.exact_count = 6;
    rec.total_count = 10;
    rec.probability = 0.6;
    rec.reference_mass = 0.5;
    rec.abs_error = 0.1;
    rec.method = "exact";
    rec.tolerance = 1e-8;
    rec.seed = 0;
    std::vector<std::string> f = sweep_fields(rec);
    REQUIRE(f.size() == kSweepColumns.size());
    CHECK(f[0] == "5");
    CHECK(f[7] == "6");
    CHECK(f[9] == "0.59999999999999998"); // 17 significant digits, lossless
    CHECK(f[12] == "exact");

    rec.method = "fast";
    rec.fast_count = 5.75;
    f = sweep_fields(rec);
    CHECK(f[7] == "5.75"); // fast path renders the real-valued count
}

TEST_CASE("cache keys") {
    std::string k1 = make_cache_key("sweep", 5, 1, "even", 0, 2, "exact", 1e-8, 0);
    std::string k2 = make_cache_key("sweep", 5, 1, "even", 0, 2, "exact", 1e-8, 0);
    CHECK(k1 == k2);
    CHECK(make_cache_key("sweep", 7, 1, "even", 0, 2, "exact", 1e-8, 0) != k1);
    CHECK(make_cache_key("sweep", 5, 1, "odd", 0, 2, "exact", 1e-8, 0) != k1);
    CHECK(make_cache_key("sweep", 5, 1, "even", 0, 2, "exact", 1e-9, 0) != k1);
    CHECK(make_cache_key("sweep", 5, 1, "even", 0, 2, "exact", 1e-8, 1) != k1);
    CHECK(key_digest(k1).size() == 16);
}

TEST_CASE("record cache round trip") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "cayley-cache-test";
    std::filesystem::remove_all(dir);
    RecordCache cache(dir.string(), true);
    std::string key = make_cache_key("sweep", 9, 1, "even", 0, 2, "exact", 1e-8, 0);
    CHECK(!cache.get(key).has_value());
    cache.put(key, "payload,line");
    auto hit = cache.get(key);
    REQUIRE(hit.has_value());
    CHECK(*hit == "payload,line");

    // same digest file but different key must not alias
    RecordCache off(dir.string(), false);
    CHECK(!off.get(key).has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache dir resolution order") {
    setenv("CAYLEY_CACHE_DIR", "/tmp/env-cache-dir", 1);
    CHECK(RecordCache::resolve_dir("") == "/tmp/env-cache-dir");
    CHECK(RecordCache::resolve_dir("/tmp/flag-dir") == "/tmp/flag-dir"); // flag wins
    unsetenv("CAYLEY_CACHE_DIR");
    CHECK(RecordCache::resolve_dir("") == ".cayley-cache");
}
