#include <texkit/pipeline.hpp>

#include <texkit/error.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace texkit {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

std::string DatasetManifest::resolved_path(std::size_t i) const {
    const std::filesystem::path p(entries[i].path);
    if (p.is_absolute() || root.empty()) return entries[i].path;
    return (std::filesystem::path(root) / p).string();
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(Errc::IoError, "cannot open manifest '" + path + "'");
    }
    DatasetManifest m;
    m.root = std::filesystem::path(path).parent_path().string();

    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "path,label") {
        raise(Errc::CorruptFile, "manifest '" + path + "' must start with 'path,label'");
    }

    std::set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no += 1;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 == line.size()) {
            raise(Errc::CorruptFile, "manifest '" + path + "' line " +
                                         std::to_string(line_no) +
                                         ": expected 'path,label'");
        }
        ManifestEntry entry{line.substr(0, comma), line.substr(comma + 1)};
        if (!seen.insert(entry.path).second) {
            raise(Errc::InvalidArgument,
                  "manifest '" + path + "' lists '" + entry.path + "' twice");
        }
        m.entries.push_back(std::move(entry));
    }

    std::set<std::string> distinct;
    for (const ManifestEntry& e : m.entries) distinct.insert(e.label);
    if (distinct.size() < 2) {
        raise(Errc::InvalidArgument,
              "manifest '" + path + "' needs at least two distinct labels");
    }
    m.class_names.assign(distinct.begin(), distinct.end());
    m.labels.reserve(m.entries.size());
    for (const ManifestEntry& e : m.entries) {
        const auto it =
            std::lower_bound(m.class_names.begin(), m.class_names.end(), e.label);
        m.labels.push_back(static_cast<int>(it - m.class_names.begin()));
    }
    return m;
}

} // namespace texkit
