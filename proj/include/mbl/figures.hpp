#pragma once

// Deterministic SVG figures. Geometry is computed in exact rationals and
// rounded to three decimals only when written.

#include "mbl/capacity.hpp"
#include "mbl/lattice.hpp"
#include "mbl/ordering.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace mbl::figures {

struct Style {
    static constexpr const char* version = "mbl-svg/1";
    static constexpr int width = 960;
    static constexpr int margin = 48;
    static constexpr int row_height = 90;
    static constexpr int level_height = 110;
    static constexpr int font_size = 13;
    static constexpr int tick = 14;
    static constexpr const char* palette[] = {"#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e"};
    static constexpr const char* css =
        "text{font-family:monospace;font-size:13px;fill:#222}"
        ".edge{stroke:#555;stroke-width:1.5;fill:none}"
        ".axis{stroke:#999;stroke-width:1}"
        ".cut{stroke:#b03a2e;stroke-width:1.5;stroke-dasharray:6 4}"
        ".swap{stroke:#b03a2e;stroke-width:1.5;fill:none;marker-end:url(#arrow)}"
        ".limit{stroke-dasharray:3 3}";
};

/// Round half away from zero to three decimals, using exact integer arithmetic.
inline std::string fixed3(const Rational& v) {
    Rational scaled = v * 1000;
    Integer n = numerator_of(scaled), d = denominator_of(scaled);
    bool neg = n < 0;
    if (neg) n = -n;
    Integer q = (2 * n + d) / (2 * d);
    std::string digits = q.str();
    while (digits.size() < 4) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - 3) + "." + digits.substr(digits.size() - 3);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return (neg && q != 0 ? "-" : "") + out;
}

inline long ceil_int(const Rational& v) {
    Integer n = numerator_of(v), d = denominator_of(v);
    Integer q = n / d;
    if (q * d < n) ++q;
    return static_cast<long>(q);
}

/// Rational within 10^-30 of a quadratic value, for placement only.
inline Rational placement(const QuadraticValue& v) {
    if (v.is_rational()) return v.q();
    Integer scale = pow10(30);
    return v.q() + v.s() * Rational(isqrt(v.r() * scale * scale), scale);
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else if (ch == '&') out += "&amp;";
        else out += ch;
    }
    return out;
}

class Svg {
public:
    Svg(int width, int height, const std::string& title) {
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
            << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
        os_ << "<!-- " << Style::version << " -->\n";
        os_ << "<title>" << escape(title) << "</title>\n";
        os_ << "<defs><style>" << Style::css << "</style>"
            << "<marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" "
               "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#b03a2e\"/></marker></defs>\n";
    }

    void line(const Rational& x1, const Rational& y1, const Rational& x2, const Rational& y2, const std::string& cls,
              const std::string& stroke = {}) {
        os_ << "<line class=\"" << cls << "\" x1=\"" << fixed3(x1) << "\" y1=\"" << fixed3(y1) << "\" x2=\""
            << fixed3(x2) << "\" y2=\"" << fixed3(y2) << '"';
        if (!stroke.empty()) os_ << " stroke=\"" << stroke << '"';
        os_ << "/>\n";
    }

    void path(const std::string& d, const std::string& cls) { os_ << "<path class=\"" << cls << "\" d=\"" << d << "\"/>\n"; }

    void polygon(const std::vector<std::pair<Rational, Rational>>& pts) {
        os_ << "<polygon class=\"edge\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os_ << (i ? " " : "") << fixed3(pts[i].first) << ',' << fixed3(pts[i].second);
        os_ << "\"/>\n";
    }

    void circle(const Rational& x, const Rational& y, int r, const std::string& fill) {
        os_ << "<circle cx=\"" << fixed3(x) << "\" cy=\"" << fixed3(y) << "\" r=\"" << r << "\" fill=\"" << fill
            << "\"/>\n";
    }

    void text(const Rational& x, const Rational& y, const std::string& s, const std::string& anchor = "middle",
              const std::string& fill = {}) {
        os_ << "<text x=\"" << fixed3(x) << "\" y=\"" << fixed3(y) << "\" text-anchor=\"" << anchor << '"';
        if (!fill.empty()) os_ << " style=\"fill:" << fill << '"';
        os_ << '>' << escape(s) << "</text>\n";
    }

    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    std::ostringstream os_;
};

/// The subtree preserving apex.max() down to `depth`, each node labelled with
/// its triple, width, and position in the decreasing order.
inline std::string subtree(const MarkovTriple& apex, std::size_t depth) {
    auto order = alternating_order(apex, depth);
    std::map<MarkovTriple, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i].triple] = i + 1;

    struct Node {
        MarkovTriple t;
        std::size_t level;
        Rational x;
        std::optional<std::size_t> parent;
    };
    const Rational span(Style::width - 2 * Style::margin);
    std::vector<Node> nodes{{apex, 0, Rational(Style::width, 2), std::nullopt}};
    std::vector<std::size_t> level{0};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t idx : level) {
            auto children = detail::preserving_children(nodes[idx].t, apex.max());
            for (std::size_t c = 0; c < children.size(); ++c) {
                // The apex splits into two halves; below that each branch is a chain.
                Rational x = nodes[idx].x;
                if (children.size() > 1) x += (c == 0 ? -1 : 1) * span / 4;
                next.push_back(nodes.size());
                nodes.push_back({children[c], d + 1, x, idx});
            }
        }
        if (next.empty()) break;
        level = std::move(next);
    }
    std::size_t levels = 0;
    for (auto& n : nodes) levels = std::max(levels, n.level + 1);
    Svg svg(Style::width, static_cast<int>(2 * Style::margin + Style::level_height * levels),
            "subtree preserving " + apex.max().str() + " from " + apex.str());
    auto y_of = [](std::size_t lvl) { return Rational(Style::margin + 20 + static_cast<long>(lvl) * Style::level_height); };
    for (auto& n : nodes)
        if (n.parent) svg.line(nodes[*n.parent].x, y_of(n.level - 1) + 26, n.x, y_of(n.level) - 16, "edge");
    for (auto& n : nodes) {
        Rational y = y_of(n.level);
        svg.text(n.x, y, n.t.str());
        svg.text(n.x, y + Style::font_size + 3, "w = " + width(n.t).str());
        if (auto it = rank.find(n.t); it != rank.end())
            svg.text(n.x - 12, y - Style::font_size - 2, "#" + std::to_string(it->second), "middle", Style::palette[1]);
    }
    return svg.finish();
}

/// Essential sequences of m_{n-1}, ..., m_{n+span} on parallel number lines,
/// with an arrow for each leading width that jumps ahead of a lower-index row.
inline std::string numberline(Spectrum& s, std::size_t n, std::size_t k = 6) {
    if (n < 2) throw DomainError("numberline: n must be >= 2");
    auto records = find_irregularities(s, n);
    std::size_t span = 1;
    for (auto& r : records)
        if (r.n == n) span = r.span;
    std::size_t first = n - 1, last = n + span;
    s.ensure_count(last);

    struct Row {
        std::size_t index;
        std::vector<Rational> widths;
        Rational limit;
    };
    std::vector<Row> rows;
    Rational lo, hi;
    bool init = false;
    for (std::size_t j = first; j <= last; ++j) {
        Row row{j, {}, placement(s.limit(j))};
        for (auto& c : s.capacities(j, k)) row.widths.push_back(c.value());
        for (const Rational& v : row.widths) {
            if (!init || v > hi) hi = v;
            if (!init || v < lo) lo = v;
            init = true;
        }
        if (row.limit < lo) lo = row.limit;
        rows.push_back(std::move(row));
    }
    const Rational left(Style::margin + 120), right(Style::width - Style::margin);
    auto x_of = [&](const Rational& v) -> Rational { return right - (v - lo) / (hi - lo) * (right - left); };
    int height = 2 * Style::margin + Style::row_height * static_cast<int>(rows.size()) + 30;
    Svg svg(Style::width, height, "essential widths of m_" + std::to_string(first) + " to m_" + std::to_string(last));
    svg.text(left, Style::margin - 16, "larger width", "start");
    svg.text(right, Style::margin - 16, "smaller width", "end");
    std::map<std::size_t, Rational> row_y;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Row& row = rows[r];
        Rational y(Style::margin + Style::row_height * static_cast<long>(r) + 30);
        row_y[row.index] = y;
        const char* color = Style::palette[r % 5];
        svg.line(left, y, right, y, "axis");
        svg.text(Style::margin, y + 4, "m_" + std::to_string(row.index) + " = " + s.m(row.index).str(), "start", color);
        for (std::size_t i = 0; i < row.widths.size(); ++i) {
            Rational x = x_of(row.widths[i]);
            svg.line(x, y - Style::tick, x, y + Style::tick, "edge", color);
            if (i == 0) svg.text(x, y - Style::tick - 4, "w1", "middle", color);
        }
        Rational xl = x_of(row.limit);
        svg.line(xl, y - Style::tick, xl, y + Style::tick, "edge limit", color);
    }
    for (std::size_t np = n + 1; np <= last; ++np) {
        for (std::size_t j = first; j < np; ++j) {
            if (s.nn_holds(j, np)) continue;
            Rational x = x_of(rows[np - first].widths[0]);
            Rational y0 = row_y[np] - Style::tick, y1 = row_y[j] + Style::tick + 6;
            svg.path("M" + fixed3(x) + "," + fixed3(y0) + " L" + fixed3(x) + "," + fixed3(y1), "swap");
        }
    }
    return svg.finish();
}

/// The base triangle of t with cut segments from each vertex to the central point.
inline std::string triangle(const MarkovTriple& t) {
    ViannaTriangle T = vianna_triangle(t);
    RationalPoint c = central_point(T);
    Rational xmin = 0, xmax = 0, ymax = 0;
    for (auto& v : T.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymax = std::max(ymax, v.y);
    }
    const Rational inner(Style::width - 2 * Style::margin);
    Rational scale = inner / std::max(Rational(xmax - xmin), ymax);
    int height = static_cast<int>(ceil_int(ymax * scale)) + 2 * Style::margin + 30;
    auto X = [&](const Rational& x) -> Rational { return Rational(Style::margin) + (x - xmin) * scale; };
    auto Y = [&](const Rational& y) -> Rational { return Rational(height - Style::margin) - y * scale; };
    Svg svg(Style::width, height, "base triangle of " + t.str());
    std::vector<std::pair<Rational, Rational>> pts;
    for (auto& v : T.vertices) pts.emplace_back(X(v.x), Y(v.y));
    svg.polygon(pts);
    for (auto& v : T.vertices) {
        svg.line(X(v.x), Y(v.y), X(c.x), Y(c.y), "cut");
        svg.text(X(v.x), Y(v.y) + (v.y == 0 ? 18 : -8), v.str());
    }
    svg.circle(X(c.x), Y(c.y), 3, Style::palette[1]);
    svg.text(X(c.x) + 8, Y(c.y) - 8, "central " + c.str(), "start", Style::palette[1]);
    svg.text(Rational(Style::margin), Rational(Style::margin - 20),
             t.str() + "  area 1/2  affine perimeter 3  width " + width(t).str(), "start");
    return svg.finish();
}

}  // namespace mbl::figures
