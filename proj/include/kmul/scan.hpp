#pragma once

#include <string>
#include <vector>

#include "kmul/classify.hpp"
#include "kmul/ifs.hpp"
#include "kmul/rational.hpp"

namespace kmul {

// Grid scan of the parameter square. Grid points are the multiples of
// grid_step strictly inside the configured open ranges, classified exactly;
// output is deterministic byte for byte.
struct ScanConfig {
    Rational grid_step = rat(1, 100);
    Interval lambda_range{Rational(0), Rational(1)};
    Interval c_range{Rational(0), Rational(1)};
    enum class Format { csv, svg } format = Format::csv;
};

namespace scan_detail {

inline std::vector<Rational> grid_points(const Rational& step, const Interval& range) {
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    if (range.lo < 0) throw std::invalid_argument("scan ranges must be nonnegative");
    std::vector<Rational> out;
    Rational q = range.lo / step;
    mpz_class k = q.get_num() / q.get_den();  // floor for nonnegative values
    Rational x = Rational(k) * step;
    while (x <= range.lo) x += step;
    for (; x < range.hi; x += step) out.push_back(x);
    return out;
}

}  // namespace scan_detail

struct ScanCell {
    Rational lambda;
    Rational c;
    RegionLabel label;
};

inline std::vector<ScanCell> scan_grid(const ScanConfig& cfg) {
    std::vector<ScanCell> cells;
    auto lambdas = scan_detail::grid_points(cfg.grid_step, cfg.lambda_range);
    auto cs = scan_detail::grid_points(cfg.grid_step, cfg.c_range);
    cells.reserve(lambdas.size() * cs.size());
    for (const auto& lambda : lambdas)
        for (const auto& c : cs)
            cells.push_back({lambda, c, classify(validate_params(lambda, c))});
    return cells;
}

// CSV schema: header "lambda,c,label", rationals printed canonically, rows
// in row-major order (lambda outer, c inner, both ascending).
inline std::string scan_csv(const ScanConfig& cfg) {
    std::string out = "lambda,c,label\n";
    for (const auto& cell : scan_grid(cfg)) {
        out += rat_str(cell.lambda);
        out += ',';
        out += rat_str(cell.c);
        out += ',';
        out += to_string(cell.label);
        out += '\n';
    }
    return out;
}

// One 4x4 rect per colored grid cell on integer coordinates, c axis pointing
// up. Cells outside the coverage region stay background white.
inline std::string scan_svg(const ScanConfig& cfg) {
    constexpr int kCell = 4;
    auto lambdas = scan_detail::grid_points(cfg.grid_step, cfg.lambda_range);
    auto cs = scan_detail::grid_points(cfg.grid_step, cfg.c_range);
    const long width = static_cast<long>(lambdas.size()) * kCell;
    const long height = static_cast<long>(cs.size()) * kCell;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            RegionLabel label = classify(validate_params(lambdas[i], cs[j]));
            const char* fill = nullptr;
            switch (label) {
                case RegionLabel::Brown: fill = "#8b4513"; break;
                case RegionLabel::Gray: fill = "#9e9e9e"; break;
                case RegionLabel::Orange: fill = "#ff9800"; break;
                case RegionLabel::Blue: fill = "#2196f3"; break;
                default: break;  // outside the coverage region: background
            }
            if (!fill) continue;
            long x = static_cast<long>(i) * kCell;
            long y = height - static_cast<long>(j + 1) * kCell;
            out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"4\" height=\"4\" fill=\"" + fill + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace kmul
