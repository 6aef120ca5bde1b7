#include <string>

#include "doctest.h"

#include "cped/bench.hpp"
#include "cped/report.hpp"
#include "test_helpers.hpp"

using namespace cped;
using namespace cped::testing;

namespace {

SweepResult small_result() {
    SweepResult r;
    r.rows.push_back({0.1, "x", "cped", 0.25, 0.02, 10});
    r.rows.push_back({0.2, "x", "cped", 0.5, 0.01, 10});
    r.rows.push_back({0.1, "c", "cped", 0.75, 0.02, 10});
    r.rows.push_back({0.2, "c", "cped", 0.5, 0.01, 10});
    return r;
}

std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("write_csv emits the schema header and sorted rows") {
    SweepResult one;
    one.rows.push_back({0.25, "x", "cped", 1.0 / 3.0, 0.0, 1});
    const std::string text = csv_string(one);
    CHECK(text == "gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds\n"
                  "0.25,x,cped,0.3333333333,0,1\n");

    const std::string multi = csv_string(small_result());
    // Sorted by (method, param, gamma_prime): c rows precede x rows.
    CHECK(multi.find(",c,") < multi.find(",x,"));

    SweepResult empty;
    CHECK_THROWS_AS(csv_string(empty), DataError);
}

TEST_CASE("CSV round-trips at emitted precision") {
    SweepResult original;
    original.rows.push_back({0.17, "alpha", "cped", 0.123456789123456789, 0.000123456789, 10});
    original.rows.push_back({0.34, "alpha", "cped", 2.0 / 3.0, 1.0 / 7.0, 10});

    TempFile f("");
    write_csv(original, f.path());
    SweepResult parsed = read_csv(f.path());
    SweepResult rounded = round_to_emitted_precision(original);
    // Sorted order is preserved here, so rows align.
    REQUIRE(parsed.rows.size() == rounded.rows.size());
    for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
        CHECK(parsed.rows[i].gamma_prime == rounded.rows[i].gamma_prime);
        CHECK(parsed.rows[i].mean_hpi == rounded.rows[i].mean_hpi);
        CHECK(parsed.rows[i].stderr_hpi == rounded.rows[i].stderr_hpi);
        CHECK(parsed.rows[i].n_seeds == rounded.rows[i].n_seeds);
    }

    // Writing the parsed result reproduces the file byte for byte.
    CHECK(csv_string(parsed) == csv_string(rounded));

    // Rounding is idempotent.
    SweepResult twice = round_to_emitted_precision(rounded);
    for (std::size_t i = 0; i < twice.rows.size(); ++i) {
        CHECK(twice.rows[i].mean_hpi == rounded.rows[i].mean_hpi);
    }
}

TEST_CASE("read_csv rejects malformed input") {
    CHECK_THROWS_AS(parse_csv(""), DataError);
    CHECK_THROWS_AS(parse_csv("wrong,header\n"), DataError);
    CHECK_THROWS_AS(parse_csv("gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds\n"),
                    DataError);
    CHECK_THROWS_AS(parse_csv("gamma_prime,param,method,mean_hpi,stderr_hpi,n_seeds\n0.1,x\n"),
                    DataError);
}

TEST_CASE("render_line_chart draws one polyline and band per series") {
    SweepConfig config;
    config.objective = Objective::activation_disjoint;
    config.n = 120;
    config.gamma_prime_step = 0.2;
    config.seeds = derive_seeds(1, 2);
    config.grid_size = 32;
    SweepResult result = run_sweep(config, Method::cped);

    const std::string svg = render_line_chart_string(result, ChartSpec{"demo", true});
    CHECK(svg.find("<svg xmlns=") == 0);
    CHECK(count_substr(svg, "<polyline") == 3);
    CHECK(count_substr(svg, "<polygon") == 3);
    CHECK(svg.find("demo") != std::string::npos);
    CHECK(svg.find("normalized HPI") != std::string::npos);
    CHECK(svg.find("gamma_prime") != std::string::npos);
}

TEST_CASE("render_line_chart: single gamma' point uses markers") {
    SweepResult r;
    r.rows.push_back({0.5, "x", "cped", 0.4, 0.1, 3});
    r.rows.push_back({0.5, "c", "cped", 0.6, 0.1, 3});
    const std::string svg = render_line_chart_string(r, ChartSpec{"", true});
    CHECK(count_substr(svg, "<polyline") == 0);
    CHECK(count_substr(svg, "<circle") == 2);
}

TEST_CASE("render_line_chart is deterministic and supports raw mode") {
    SweepResult r = small_result();
    const std::string a = render_line_chart_string(r, ChartSpec{"t", true});
    const std::string b = render_line_chart_string(r, ChartSpec{"t", true});
    CHECK(a == b);

    SweepResult raw;
    raw.rows.push_back({0.1, "x", "cped", 12.5, 2.0, 10});
    raw.rows.push_back({0.2, "x", "cped", 40.0, 3.0, 10});
    const std::string svg = render_line_chart_string(raw, ChartSpec{"", false});
    CHECK(svg.find("raw variance") != std::string::npos);
}

TEST_CASE("render_line_chart rejects empty and unsorted input") {
    SweepResult empty;
    CHECK_THROWS_AS(render_line_chart_string(empty, ChartSpec{}), DataError);

    SweepResult dup;
    dup.rows.push_back({0.1, "x", "cped", 0.5, 0.0, 1});
    dup.rows.push_back({0.1, "x", "cped", 0.6, 0.0, 1});
    CHECK_THROWS_AS(render_line_chart_string(dup, ChartSpec{}), DataError);
}
