#include <catch2/catch_amalgamated.hpp>

#include "kmul/scan.hpp"

using namespace kmul;

TEST_CASE("grid points are the interior multiples of the step") {
    auto pts = scan_detail::grid_points(rat(1, 10), Interval(rat(0), rat(1)));
    REQUIRE(pts.size() == 9);
    REQUIRE(pts.front() == rat(1, 10));
    REQUIRE(pts.back() == rat(9, 10));

    auto shifted = scan_detail::grid_points(rat(1, 4), Interval(rat(1, 8), rat(7, 8)));
    REQUIRE(shifted == std::vector<Rational>{rat(1, 4), rat(1, 2), rat(3, 4)});

    REQUIRE_THROWS_AS(scan_detail::grid_points(rat(0), Interval(rat(0), rat(1))),
                      std::invalid_argument);
}

TEST_CASE("coarse CSV golden") {
    ScanConfig cfg;
    cfg.grid_step = rat(1, 4);
    const char* expected =
        "lambda,c,label\n"
        "1/4,1/4,NecessaryFails\n"
        "1/4,1/2,NecessaryFails\n"
        "1/4,3/4,InvalidParams\n"
        "1/2,1/4,InvalidParams\n"
        "1/2,1/2,InvalidParams\n"
        "1/2,3/4,InvalidParams\n"
        "3/4,1/4,InvalidParams\n"
        "3/4,1/2,InvalidParams\n"
        "3/4,3/4,InvalidParams\n";
    REQUIRE(scan_csv(cfg) == expected);
}

TEST_CASE("step 1/10 grid classifies 81 interior points deterministically") {
    ScanConfig cfg;
    cfg.grid_step = rat(1, 10);
    std::string csv = scan_csv(cfg);
    REQUIRE(csv == scan_csv(cfg));
    std::size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    REQUIRE(rows == 82);  // header + 81 cells
    REQUIRE(csv.find("3/10,1/2,Gray\n") != std::string::npos);
    REQUIRE(csv.find("3/10,3/5,Orange\n") != std::string::npos);
    REQUIRE(csv.find("2/5,1/2,Brown\n") != std::string::npos);
    REQUIRE(csv.find("1/10,1/10,NecessaryFails\n") != std::string::npos);
}

TEST_CASE("every colored scan cell lies in the coverage region with precedence") {
    ScanConfig cfg;
    cfg.grid_step = rat(1, 40);
    for (const auto& cell : scan_grid(cfg)) {
        IfsParams p = validate_params(cell.lambda, cell.c);
        bool colored = cell.label == RegionLabel::Brown || cell.label == RegionLabel::Gray ||
                       cell.label == RegionLabel::Orange || cell.label == RegionLabel::Blue;
        if (colored) {
            REQUIRE(p.valid);
            REQUIRE(p.d * p.d <= p.c);
            REQUIRE(classify(p) == cell.label);
        } else {
            REQUIRE((!p.valid || p.c < p.d * p.d));
        }
    }
}

TEST_CASE("SVG output is deterministic with one rect per colored cell") {
    ScanConfig cfg;
    cfg.grid_step = rat(1, 20);
    std::string svg = scan_svg(cfg);
    REQUIRE(svg == scan_svg(cfg));
    REQUIRE(svg.rfind("<svg xmlns", 0) == 0);
    std::size_t rects = 0;
    std::size_t pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++rects;
        pos += 5;
    }
    std::size_t colored = 0;
    for (const auto& cell : scan_grid(cfg)) {
        if (cell.label == RegionLabel::Brown || cell.label == RegionLabel::Gray ||
            cell.label == RegionLabel::Orange || cell.label == RegionLabel::Blue)
            ++colored;
    }
    REQUIRE(rects == colored + 1);  // background plus one per colored cell
}
