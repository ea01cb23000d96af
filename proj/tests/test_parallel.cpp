#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "entwine/bundles.hpp"
#include "entwine/parallel.hpp"
#include "entwine/report.hpp"

using namespace entwine;

TEST_CASE("parallel_for and serial_for fill identical slots") {
    const std::size_t n = 503;
    std::vector<long> par(n, -1), ser(n, -1);
    parallel_for(n, [&](std::size_t i) { par[i] = static_cast<long>(i * i % 97); });
    serial_for(n, [&](std::size_t i) { ser[i] = static_cast<long>(i * i % 97); });
    CHECK(par == ser);
    CHECK(std::count(par.begin(), par.end(), -1) == 0);
}

TEST_CASE("parallel_for covers every index exactly once") {
    const std::size_t n = 1000;
    std::vector<int> hits(n, 0);
    parallel_for(n, [&](std::size_t i) { ++hits[i]; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == static_cast<int>(n));
    CHECK(std::count(hits.begin(), hits.end(), 1) == static_cast<int>(n));
}

TEST_CASE("verification reports are identical on both execution paths") {
    Bundle b = build_eq2(0, 5);
    BundleReport par = verify_bundle(b, 3, 2, 42);

    ParallelConfig& cfg = parallel_config();
    const bool was = cfg.enabled;
    cfg.enabled = false;
    BundleReport ser = verify_bundle(b, 3, 2, 42);
    cfg.enabled = was;

    CHECK(par.pass());
    CHECK(ser.pass());
    CHECK(report_json(par) == report_json(ser));
}
