#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "winding_atlas/report.hpp"

using namespace watlas::report;

TEST_CASE("double formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.0) == "-1");
    CHECK(format_double(3.141592653589793) == "3.14159265359");
    CHECK(format_double(1e-30) == "1e-30");
}

TEST_CASE("CSV writer: golden output and quoting") {
    const std::vector<CsvRow> rows{
        {"m", "observable", "mean"},
        {"1", "S_over_t", "0.25"},
        {"2", "needs,quote", "say \"hi\""},
    };
    CHECK(to_csv(rows) ==
          "m,observable,mean\n"
          "1,S_over_t,0.25\n"
          "2,\"needs,quote\",\"say \"\"hi\"\"\"\n");
    CHECK(to_csv(rows) == to_csv(rows));  // deterministic
}

TEST_CASE("SVG rendering: determinism and structure") {
    PlotSpec spec;
    spec.title = "test <plot>";
    spec.x_label = "x";
    spec.y_label = "y";
    Series line{"line", {{0.0, 0.0}, {1.0, 2.0}, {2.0, 1.0}}, false};
    Series dots{"dots", {{0.5, 0.5}, {1.5, 1.5}}, true};
    const std::string svg = render_svg(spec, {line, dots});
    CHECK(svg == render_svg(spec, {line, dots}));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
    CHECK(svg.find("&lt;plot&gt;") != std::string::npos);  // escaped title
    CHECK(svg.find("<plot>") == std::string::npos);

    PlotSpec logspec = spec;
    logspec.log_x = true;
    Series pow2{"pow2", {{1.0, 0.0}, {10.0, 1.0}, {100.0, 2.0}}, false};
    const std::string logsvg = render_svg(logspec, {pow2});
    CHECK(logsvg.find("polyline") != std::string::npos);
}

TEST_CASE("timestamp shape") {
    const std::string ts = timestamp_utc();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[19] == 'Z');
}
