#include <texkit/pipeline.hpp>

#include <texkit/error.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace texkit {

namespace {

constexpr std::string_view kMagicPrefix = "# texkit-features v1 fingerprint=";
constexpr std::string_view kSchemaKey = " schema=";

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

LabeledView to_labeled(const FeatureTable& table) {
    LabeledView view;
    std::set<std::string> distinct(table.labels.begin(), table.labels.end());
    view.class_names.assign(distinct.begin(), distinct.end());
    view.data.x = table.x;
    view.data.schema_id = table.schema.fingerprint;
    view.data.y.reserve(table.labels.size());
    for (const std::string& label : table.labels) {
        const auto it =
            std::lower_bound(view.class_names.begin(), view.class_names.end(), label);
        view.data.y.push_back(static_cast<int>(it - view.class_names.begin()));
    }
    return view;
}

void write_features_csv(const FeatureTable& table, const std::string& path) {
    std::ostringstream out;
    out << kMagicPrefix << table.config_fingerprint << kSchemaKey
        << table.schema.fingerprint << '\n';
    out << "path,label";
    for (const std::string& name : table.schema.names) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << table.paths[r] << ',' << table.labels[r];
        for (double v : table.x[r]) out << ',' << detail::format_double(v);
        out << '\n';
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << out.str()) || !file.flush()) {
        raise(Errc::IoError, "cannot write feature table '" + path + "'");
    }
}

FeatureTable read_features_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::IoError, "cannot open feature table '" + path + "'");
    }
    FeatureTable table;
    std::string line;

    if (!std::getline(in, line) || !line.starts_with(kMagicPrefix)) {
        raise(Errc::CorruptFile,
              "'" + path + "' is not a feature table (missing fingerprint line)");
    }
    std::string_view rest = std::string_view(line).substr(kMagicPrefix.size());
    const std::size_t schema_at = rest.find(kSchemaKey);
    if (schema_at == std::string_view::npos) {
        raise(Errc::CorruptFile, "'" + path + "' is missing the schema fingerprint");
    }
    table.config_fingerprint = std::string(rest.substr(0, schema_at));
    table.schema.fingerprint = std::string(rest.substr(schema_at + kSchemaKey.size()));

    if (!std::getline(in, line)) {
        raise(Errc::CorruptFile, "'" + path + "' has no header row");
    }
    const std::vector<std::string_view> header = split_commas(line);
    if (header.size() < 3 || header[0] != "path" || header[1] != "label") {
        raise(Errc::CorruptFile, "'" + path + "' header must be 'path,label,<features>'");
    }
    for (std::size_t i = 2; i < header.size(); ++i) {
        table.schema.names.emplace_back(header[i]);
    }

    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        line_no += 1;
        if (line.empty()) continue;
        const std::vector<std::string_view> cells = split_commas(line);
        if (cells.size() != header.size()) {
            raise(Errc::CorruptFile, "'" + path + "' line " + std::to_string(line_no) +
                                         ": expected " + std::to_string(header.size()) +
                                         " cells, found " + std::to_string(cells.size()));
        }
        table.paths.emplace_back(cells[0]);
        table.labels.emplace_back(cells[1]);
        std::vector<double> row(cells.size() - 2);
        for (std::size_t i = 2; i < cells.size(); ++i) {
            row[i - 2] = detail::parse_double(
                cells[i], "'" + path + "' line " + std::to_string(line_no));
        }
        table.x.push_back(std::move(row));
    }
    return table;
}

} // namespace texkit
