#include <texkit/svg_report.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace texkit {

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// All geometry and colors use integer arithmetic so the byte output is a
// pure function of the inputs.
constexpr int kCell = 56;
constexpr int kFont = 13;

void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        raise(Errc::IoError, "cannot write SVG file '" + path + "'");
    }
}

} // namespace

std::string confusion_svg(const ConfusionMatrix& cm,
                          const std::vector<std::string>& class_names,
                          const std::string& title) {
    const auto rows = static_cast<int>(cm.class_count);
    const auto cols = static_cast<int>(cm.col_count());
    const int left = 120;
    const int top = 84;
    const int width = left + cols * kCell + 24;
    const int height = top + rows * kCell + 48;

    std::uint64_t peak = 1;
    for (std::uint64_t c : cm.counts) peak = std::max(peak, c);

    const auto col_label = [&](int p) {
        return p < rows ? xml_escape(class_names[static_cast<std::size_t>(p)])
                        : std::string("unknown");
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"16\" text-anchor=\"middle\">"
        << xml_escape(title) << "</text>\n";
    svg << "<text x=\"" << left + cols * kCell / 2 << "\" y=\"46\" "
           "font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "fill=\"#555\">predicted</text>\n";
    svg << "<text x=\"20\" y=\"" << top + rows * kCell / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "fill=\"#555\" transform=\"rotate(-90 20 "
        << top + rows * kCell / 2 << ")\">actual</text>\n";

    for (int p = 0; p < cols; ++p) {
        svg << "<text x=\"" << left + p * kCell + kCell / 2 << "\" y=\"" << top - 10
            << "\" font-family=\"sans-serif\" font-size=\"" << kFont
            << "\" text-anchor=\"middle\">" << col_label(p) << "</text>\n";
    }
    for (int t = 0; t < rows; ++t) {
        svg << "<text x=\"" << left - 10 << "\" y=\""
            << top + t * kCell + kCell / 2 + kFont / 2 << "\" font-family=\"sans-serif\" "
            << "font-size=\"" << kFont << "\" text-anchor=\"end\">"
            << xml_escape(class_names[static_cast<std::size_t>(t)]) << "</text>\n";
    }

    for (int t = 0; t < rows; ++t) {
        for (int p = 0; p < cols; ++p) {
            const std::uint64_t count =
                cm.at(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
            const std::uint64_t shade = count * 1000 / peak; // 0..1000
            const auto r = static_cast<int>(255 - 247 * shade / 1000);
            const auto g = static_cast<int>(255 - 207 * shade / 1000);
            const auto b = static_cast<int>(255 - 148 * shade / 1000);
            const int x = left + p * kCell;
            const int y = top + t * kCell;
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
                << "\" height=\"" << kCell << "\" fill=\"rgb(" << r << ',' << g << ','
                << b << ")\" stroke=\"#ccc\"/>\n";
            svg << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + kFont / 2
                << "\" font-family=\"sans-serif\" font-size=\"" << kFont
                << "\" text-anchor=\"middle\" fill=\""
                << (shade > 600 ? "white" : "black") << "\">" << count << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_confusion_svg(const ConfusionMatrix& cm,
                          const std::vector<std::string>& class_names,
                          const std::string& title, const std::string& path) {
    write_file(confusion_svg(cm, class_names, title), path);
}

std::string class_bars_svg(const std::vector<ClassifierRun>& runs,
                           const std::vector<std::string>& class_names) {
    static const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                     "#59a14f", "#edc948", "#b07aa1"};
    constexpr int kPaletteSize = 7;
    const auto n_runs = static_cast<int>(runs.size());
    const auto n_classes = static_cast<int>(class_names.size());
    const int bar = 18;
    const int gap = 28;
    const int group = n_runs * bar + gap;
    const int left = 64;
    const int top = 40;
    const int plot_h = 220;
    const int legend_h = 28 + 18 * ((n_runs + 3) / 4);
    const int width = std::max(left + n_classes * group + 24, 320);
    const int height = top + plot_h + 56 + legend_h;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"16\" text-anchor=\"middle\">Per-class recall</text>\n";

    for (int grid = 0; grid <= 4; ++grid) { // 0, 0.25, ..., 1.0 gridlines
        const int y = top + plot_h - grid * plot_h / 4;
        svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
            << left + n_classes * group - gap / 2 << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << (grid == 4 ? "1.0" : grid == 0 ? "0.0" : "0." + std::to_string(grid * 25))
            << "</text>\n";
    }

    for (int c = 0; c < n_classes; ++c) {
        const int gx = left + c * group;
        for (int m = 0; m < n_runs; ++m) {
            const double recall = runs[static_cast<std::size_t>(m)]
                                      .report.recall[static_cast<std::size_t>(c)];
            const auto h = static_cast<int>(std::llround(recall * plot_h));
            svg << "<rect x=\"" << gx + m * bar << "\" y=\"" << top + plot_h - h
                << "\" width=\"" << bar - 2 << "\" height=\"" << h << "\" fill=\""
                << kPalette[m % kPaletteSize] << "\"/>\n";
        }
        svg << "<text x=\"" << gx + n_runs * bar / 2 << "\" y=\"" << top + plot_h + 20
            << "\" font-family=\"sans-serif\" font-size=\"" << kFont
            << "\" text-anchor=\"middle\">"
            << xml_escape(class_names[static_cast<std::size_t>(c)]) << "</text>\n";
    }

    const int legend_y = top + plot_h + 44;
    for (int m = 0; m < n_runs; ++m) {
        const int lx = left + (m % 4) * 90;
        const int ly = legend_y + (m / 4) * 18;
        svg << "<rect x=\"" << lx << "\" y=\"" << ly - 10 << "\" width=\"12\" height=\"12\" "
            << "fill=\"" << kPalette[m % kPaletteSize] << "\"/>\n";
        svg << "<text x=\"" << lx + 18 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(runs[static_cast<std::size_t>(m)].id) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_class_bars_svg(const std::vector<ClassifierRun>& runs,
                           const std::vector<std::string>& class_names,
                           const std::string& path) {
    write_file(class_bars_svg(runs, class_names), path);
}

} // namespace texkit
