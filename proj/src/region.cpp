#include "srr/region.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srr {

namespace {

bool is_all_coded(const StorageSystem& system) {
    const auto counts = system.systematic_counts();
    return std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0; });
}

// Iterates lambda-hat grid points (multiples of step in [0, limit]^dims) in
// lexicographic order.
template <typename Fn>
void for_each_grid_point(int dims, const Rat& step, const Rat& limit, Fn&& fn) {
    std::vector<Rat> point(dims, Rat(0));
    if (dims == 0) {
        fn(point);
        return;
    }
    while (true) {
        fn(point);
        int d = dims - 1;
        while (d >= 0) {
            point[d] += step;
            if (point[d] <= limit) break;
            point[d] = 0;
            --d;
        }
        if (d < 0) break;
    }
}

std::optional<BoundarySample> evaluate_point(
    const StorageSystem& system, const RepairGroupTable& table,
    const std::vector<Rat>& lambda_hat, BoundarySource source,
    const LpMode& mode, bool all_coded) {
    BoundarySample sample;
    sample.lambda_hat = lambda_hat;
    sample.source = source;
    const auto counts = system.systematic_counts();

    switch (source) {
        case BoundarySource::lp: {
            MaximizeResult r = maximize_last(system, table, lambda_hat, mode);
            if (!r.ok()) return std::nullopt;
            sample.L = r.L;
            break;
        }
        case BoundarySource::closed_form: {
            if (all_coded) {
                LValue v = L_all_coded(system.coded_count(), system.K, system.mu,
                                       lambda_hat);
                if (!v.ok()) return std::nullopt;
                sample.L = v.value;
            } else {
                LValue v = L_three_file(counts[0], counts[1], counts[2],
                                        system.coded_count(), system.mu,
                                        lambda_hat[0], lambda_hat[1]);
                if (!v.ok()) return std::nullopt;
                sample.L = v.value;
                CaseResult c = classify_three_file(counts[0], counts[1],
                                                   system.coded_count(), system.mu,
                                                   lambda_hat[0], lambda_hat[1]);
                sample.case_label = c.which;
            }
            break;
        }
        case BoundarySource::greedy: {
            GreedyResult r = maximize_lambda_K_greedy(system, lambda_hat);
            if (!r.ok()) return std::nullopt;
            sample.L = r.lambda_K;
            break;
        }
    }
    return sample;
}

}  // namespace

RegionBoundary sample_boundary(const StorageSystem& system, const Rat& grid_step,
                               BoundarySource source, const LpMode& mode) {
    if (grid_step <= 0) throw std::invalid_argument("grid step must be positive");
    const bool all_coded = is_all_coded(system);
    if (source == BoundarySource::closed_form && !all_coded && system.K != 3)
        throw std::invalid_argument(
            "closed-form source requires an all-coded system or K = 3");

    const RepairGroupTable table = enumerate_repair_groups(system);
    RegionBoundary region;
    region.K = system.K;
    const Rat limit = total_capacity_bound(system);
    for_each_grid_point(system.K - 1, grid_step, limit, [&](const std::vector<Rat>& p) {
        if (auto sample = evaluate_point(system, table, p, source, mode, all_coded))
            region.samples.push_back(std::move(*sample));
    });
    return region;
}

RegionBoundary all_coded_polytope(int C, int K, const Rat& mu) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (C < 0) throw std::invalid_argument("C must be >= 0");
    if (mu <= 0) throw std::invalid_argument("mu must be positive");

    RegionBoundary region;
    region.K = K;
    const bool degenerate = C <= K - 1;
    const Rat intercept = degenerate ? Rat(0) : Rat(frac(C, K) * mu);

    std::vector<Halfspace> halfspaces;
    for (int i = 0; i < K; ++i) {
        Halfspace h;
        h.normal.assign(K, Rat(0));
        h.normal[i] = -1;
        h.offset = 0;
        halfspaces.push_back(std::move(h));
    }
    Halfspace cap;
    cap.normal.assign(K, Rat(1));
    cap.offset = intercept;
    halfspaces.push_back(std::move(cap));
    region.halfspaces = std::move(halfspaces);

    std::vector<std::vector<Rat>> vertices;
    vertices.emplace_back(K, Rat(0));
    if (!degenerate) {
        for (int i = 0; i < K; ++i) {
            std::vector<Rat> v(K, Rat(0));
            v[i] = intercept;
            vertices.push_back(std::move(v));
        }
    }
    region.vertices = std::move(vertices);
    return region;
}

CrossValidationReport cross_validate(const StorageSystem& system,
                                     const Rat& grid_step) {
    if (system.K != 3)
        throw std::invalid_argument("cross validation is defined for K = 3");
    if (grid_step <= 0) throw std::invalid_argument("grid step must be positive");

    const auto counts = system.systematic_counts();
    const int C = system.coded_count();
    const RepairGroupTable table = enumerate_repair_groups(system);
    const Rat limit = total_capacity_bound(system);

    CrossValidationReport report;
    report.max_abs_discrepancy = 0;
    for_each_grid_point(2, grid_step, limit, [&](const std::vector<Rat>& p) {
        if (!three_file_preconditions(counts[0], counts[1], C, system.mu, p[0], p[1]))
            return;
        ++report.points_checked;
        CrossValidationPoint point;
        point.l1 = p[0];
        point.l2 = p[1];

        MaximizeResult lp = maximize_last(system, table, p, LpMode::rational());
        if (lp.ok()) point.lp = lp.L;
        LValue closed = L_three_file(counts[0], counts[1], counts[2], C,
                                     system.mu, p[0], p[1]);
        if (closed.ok()) point.closed = closed.value;
        GreedyResult greedy = maximize_lambda_K_greedy(system, p);
        if (greedy.ok()) point.greedy = greedy.lambda_K;
        CaseResult c =
            classify_three_file(counts[0], counts[1], C, system.mu, p[0], p[1]);
        if (c.status == LValue::Status::ok) point.case_label = c.which;

        bool consistent = point.lp.has_value() == point.closed.has_value() &&
                          point.lp.has_value() == point.greedy.has_value();
        if (consistent && point.lp.has_value())
            consistent = *point.lp == *point.closed && *point.lp == *point.greedy;
        auto track = [&](const std::optional<Rat>& a, const std::optional<Rat>& b) {
            if (!a || !b) return;
            Rat diff = abs(Rat(*a - *b));
            if (diff > report.max_abs_discrepancy)
                report.max_abs_discrepancy = diff;
        };
        track(point.lp, point.closed);
        track(point.lp, point.greedy);
        track(point.closed, point.greedy);
        if (!consistent) report.mismatches.push_back(std::move(point));
    });
    return report;
}

const char* to_string(BoundarySource source) {
    switch (source) {
        case BoundarySource::lp: return "lp";
        case BoundarySource::closed_form: return "closed";
        case BoundarySource::greedy: return "greedy";
    }
    return "?";
}

namespace {

void write_csv(const RegionBoundary& region, std::ostream& os) {
    for (int i = 1; i < region.K; ++i) os << "lambda_" << i << ",";
    os << "L,source,case_label\n";
    for (const BoundarySample& s : region.samples) {
        for (const Rat& l : s.lambda_hat) os << to_decimal_string(l) << ",";
        os << to_decimal_string(s.L) << "," << to_string(s.source) << ",";
        if (s.case_label) os << to_string(*s.case_label);
        os << "\n";
    }
}

void write_json(const RegionBoundary& region, std::ostream& os) {
    os << "{\n  \"K\": " << region.K << ",\n  \"samples\": [";
    for (size_t i = 0; i < region.samples.size(); ++i) {
        const BoundarySample& s = region.samples[i];
        os << (i ? ",\n    " : "\n    ") << "{\"lambda_hat\": [";
        for (size_t d = 0; d < s.lambda_hat.size(); ++d)
            os << (d ? ", " : "") << to_decimal_string(s.lambda_hat[d]);
        os << "], \"L\": " << to_decimal_string(s.L) << ", \"source\": \""
           << to_string(s.source) << "\"";
        if (s.case_label)
            os << ", \"case_label\": \"" << to_string(*s.case_label) << "\"";
        os << "}";
    }
    os << "\n  ]";
    if (region.halfspaces) {
        os << ",\n  \"halfspaces\": [";
        for (size_t i = 0; i < region.halfspaces->size(); ++i) {
            const Halfspace& h = (*region.halfspaces)[i];
            os << (i ? ",\n    " : "\n    ") << "{\"normal\": [";
            for (size_t d = 0; d < h.normal.size(); ++d)
                os << (d ? ", " : "") << to_decimal_string(h.normal[d]);
            os << "], \"offset\": " << to_decimal_string(h.offset) << "}";
        }
        os << "\n  ]";
    }
    if (region.vertices) {
        os << ",\n  \"vertices\": [";
        for (size_t i = 0; i < region.vertices->size(); ++i) {
            os << (i ? ",\n    " : "\n    ") << "[";
            const auto& v = (*region.vertices)[i];
            for (size_t d = 0; d < v.size(); ++d)
                os << (d ? ", " : "") << to_decimal_string(v[d]);
            os << "]";
        }
        os << "\n  ]";
    }
    os << "\n}\n";
}

struct SvgMapper {
    double scale_x, scale_y;
    static constexpr double size = 600.0;
    static constexpr double margin = 60.0;

    double x(double v) const { return margin + v * scale_x; }
    double y(double v) const { return size - margin - v * scale_y; }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_svg_header(std::ostream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
          "viewBox=\"0 0 600 600\">\n";
}

void write_axes(std::ostream& os, const SvgMapper& map, const std::string& xlabel,
                const std::string& ylabel, double xmax, double ymax) {
    os << "  <line x1=\"" << svg_num(map.x(0)) << "\" y1=\"" << svg_num(map.y(0))
       << "\" x2=\"" << svg_num(map.x(xmax)) << "\" y2=\"" << svg_num(map.y(0))
       << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << svg_num(map.x(0)) << "\" y1=\"" << svg_num(map.y(0))
       << "\" x2=\"" << svg_num(map.x(0)) << "\" y2=\"" << svg_num(map.y(ymax))
       << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << svg_num(map.x(xmax) + 8) << "\" y=\""
       << svg_num(map.y(0) + 4) << "\" font-size=\"14\">" << xlabel
       << "</text>\n";
    os << "  <text x=\"" << svg_num(map.x(0) - 10) << "\" y=\""
       << svg_num(map.y(ymax) - 8) << "\" font-size=\"14\">" << ylabel
       << "</text>\n";
}

void write_svg_two_file(const RegionBoundary& region, std::ostream& os) {
    if (region.K == 1) {
        // one file: the region is the interval [0, L] on a single axis
        const double L =
            region.samples.empty() ? 0.0 : to_double(region.samples.front().L);
        const double span = std::max(L, 1.0);
        SvgMapper map{(SvgMapper::size - 2 * SvgMapper::margin) / span,
                      (SvgMapper::size - 2 * SvgMapper::margin) / span};
        write_svg_header(os);
        write_axes(os, map, "λ1", "", span, span);
        os << "  <line x1=\"" << svg_num(map.x(0)) << "\" y1=\""
           << svg_num(map.y(0)) << "\" x2=\"" << svg_num(map.x(L)) << "\" y2=\""
           << svg_num(map.y(0)) << "\" stroke=\"#3182bd\" stroke-width=\"4\"/>\n";
        os << "</svg>\n";
        return;
    }
    // samples are in ascending lambda_1 order already (grid order)
    double max_l1 = 0, max_L = 0;
    for (const BoundarySample& s : region.samples) {
        max_l1 = std::max(max_l1, to_double(s.lambda_hat[0]));
        max_L = std::max(max_L, to_double(s.L));
    }
    const double span = std::max({max_l1, max_L, 1.0});
    SvgMapper map{(SvgMapper::size - 2 * SvgMapper::margin) / span,
                  (SvgMapper::size - 2 * SvgMapper::margin) / span};

    write_svg_header(os);
    write_axes(os, map, "λ1", "λ2", span, span);
    if (!region.samples.empty()) {
        os << "  <polygon fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#3182bd\" "
              "points=\"";
        os << svg_num(map.x(0)) << "," << svg_num(map.y(0)) << " ";
        for (const BoundarySample& s : region.samples)
            os << svg_num(map.x(to_double(s.lambda_hat[0]))) << ","
               << svg_num(map.y(to_double(s.L))) << " ";
        os << svg_num(map.x(max_l1)) << "," << svg_num(map.y(0));
        os << "\"/>\n";
        // intercept annotations
        const BoundarySample& first = region.samples.front();
        os << "  <text x=\"" << svg_num(map.x(0) + 4) << "\" y=\""
           << svg_num(map.y(to_double(first.L)) - 4) << "\" font-size=\"12\">"
           << to_decimal_string(first.L, 6) << "</text>\n";
        os << "  <text x=\"" << svg_num(map.x(max_l1) - 4) << "\" y=\""
           << svg_num(map.y(0) + 16) << "\" font-size=\"12\">"
           << to_decimal_string(region.samples.back().lambda_hat[0], 6)
           << "</text>\n";
    } else {
        os << "  <circle cx=\"" << svg_num(map.x(0)) << "\" cy=\""
           << svg_num(map.y(0)) << "\" r=\"3\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
}

void write_svg_three_file_slices(const RegionBoundary& region, std::ostream& os) {
    double span = 1.0;
    for (const BoundarySample& s : region.samples)
        span = std::max({span, to_double(s.lambda_hat[1]), to_double(s.L)});
    SvgMapper map{(SvgMapper::size - 2 * SvgMapper::margin) / span,
                  (SvgMapper::size - 2 * SvgMapper::margin) / span};
    write_svg_header(os);
    write_axes(os, map, "λ2", "λ3", span, span);

    // one polyline of (lambda_2, L) per distinct lambda_1
    size_t i = 0;
    int slice = 0;
    while (i < region.samples.size()) {
        const Rat l1 = region.samples[i].lambda_hat[0];
        std::ostringstream points;
        size_t j = i;
        for (; j < region.samples.size() && region.samples[j].lambda_hat[0] == l1;
             ++j) {
            points << svg_num(map.x(to_double(region.samples[j].lambda_hat[1])))
                   << "," << svg_num(map.y(to_double(region.samples[j].L))) << " ";
        }
        const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3",
                                "#e7298a", "#66a61e", "#e6ab02"};
        os << "  <polyline fill=\"none\" stroke=\"" << colors[slice % 6]
           << "\" points=\"" << points.str() << "\"/>\n";
        os << "  <text x=\"" << svg_num(SvgMapper::size - 180) << "\" y=\""
           << svg_num(40.0 + 16 * slice) << "\" font-size=\"12\" fill=\""
           << colors[slice % 6] << "\">λ1 = " << to_decimal_string(l1, 6)
           << "</text>\n";
        ++slice;
        i = j;
    }
    os << "</svg>\n";
}

}  // namespace

void export_region(const RegionBoundary& region, ExportFormat format,
                   const std::filesystem::path& path) {
    if (format == ExportFormat::svg && region.K > 3)
        throw std::invalid_argument("svg export supports K <= 3 only");

    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    switch (format) {
        case ExportFormat::csv: write_csv(region, os); break;
        case ExportFormat::json: write_json(region, os); break;
        case ExportFormat::svg:
            if (region.K <= 2)
                write_svg_two_file(region, os);
            else
                write_svg_three_file_slices(region, os);
            break;
    }
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace srr
