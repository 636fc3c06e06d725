#include "lifemodes/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lifemodes::io {

namespace {

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string transition_csv(const TransitionMatrix& t) {
    std::ostringstream os;
    os << "next|prev";
    for (const auto& s : t.states) os << ',' << label(s);
    os << '\n';
    for (std::size_t row = 0; row < t.size(); ++row) {
        os << label(t.states[row]);
        for (std::size_t col = 0; col < t.size(); ++col) {
            os << ',' << format_number(t.p(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json transition_json(const TransitionMatrix& t) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto& s : t.states) states.push_back(label(s));
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < t.p.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < t.p.cols(); ++c) row.push_back(t.p(r, c));
        rows.push_back(std::move(row));
    }
    return {{"convention", "p[next][prev]"}, {"states", std::move(states)}, {"p", std::move(rows)}};
}

std::string life_csv(const std::vector<LifeTable>& tables) {
    std::ostringstream os;
    os << "initial_state,matched_index,expectancy,steps_tabulated,survival_at_last_step\n";
    for (const auto& t : tables) {
        os << label(t.initial_state) << ',' << matched_index(t.initial_state) << ','
           << format_number(t.expectancy) << ',' << t.survival.size() << ','
           << format_number(t.survival.empty() ? 0.0 : t.survival.back()) << '\n';
    }
    return os.str();
}

nlohmann::json life_json(const std::vector<LifeTable>& tables) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : tables) {
        out.push_back({{"initial_state", label(t.initial_state)},
                       {"matched_index", matched_index(t.initial_state)},
                       {"expectancy", t.expectancy},
                       {"steps_tabulated", t.survival.size()},
                       {"survival_at_last_step", t.survival.empty() ? 0.0 : t.survival.back()}});
    }
    return out;
}

std::string survival_csv(const std::vector<LifeTable>& tables) {
    std::ostringstream os;
    os << 's';
    std::size_t longest = 0;
    for (const auto& t : tables) {
        os << ',' << label(t.initial_state);
        longest = std::max(longest, t.survival.size());
    }
    os << '\n';
    for (std::size_t s = 0; s < longest; ++s) {
        os << s + 1;
        for (const auto& t : tables) {
            os << ',';
            if (s < t.survival.size()) os << format_number(t.survival[s]);
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json spectrum_json(const HalfLineVector& hl) {
    nlohmann::json eigen = nlohmann::json::array();
    for (const auto& z : hl.full_spectrum) eigen.push_back(complex_json(z));
    nlohmann::json u = nlohmann::json::array();
    for (Eigen::Index i = 0; i < hl.u.size(); ++i) u.push_back(complex_json(hl.u(i)));
    return {{"cutoff", hl.cutoff},
            {"eigenvalues", std::move(eigen)},
            {"lambda_max", complex_json(hl.renorm_eigenvalue)},
            {"u", std::move(u)}};
}

std::string heatmap_svg(const TransitionMatrix& t, const std::string& title) {
    constexpr int cell = 36;
    constexpr int margin = 64;
    const int n = static_cast<int>(t.size());
    const int width = margin + n * cell + 16;
    const int height = margin + n * cell + 40;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"16\" font-size=\"12\">" << xml_escape(title) << "</text>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - 8
       << "\">columns: previous state, rows: next state</text>\n";
    for (int c = 0; c < n; ++c) {
        os << "<text x=\"" << margin + c * cell + cell / 2 << "\" y=\"" << margin - 6
           << "\" text-anchor=\"middle\">" << xml_escape(label(t.states[c])) << "</text>\n";
    }
    for (int r = 0; r < n; ++r) {
        os << "<text x=\"" << margin - 4 << "\" y=\"" << margin + r * cell + cell / 2 + 3
           << "\" text-anchor=\"end\">" << xml_escape(label(t.states[r])) << "</text>\n";
        for (int c = 0; c < n; ++c) {
            const double p = std::clamp(t.p(r, c), 0.0, 1.0);
            const int level = static_cast<int>(std::lround(255.0 * (1.0 - p)));
            os << "<rect x=\"" << margin + c * cell << "\" y=\"" << margin + r * cell << "\" width=\""
               << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << level << ',' << level << ','
               << level << ")\"><title>" << format_number(p) << "</title></rect>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

} // namespace lifemodes::io
