#include "hogsvm/manifest.hpp"

#include <fstream>
#include <string>

#include "hogsvm/errors.hpp"

namespace hogsvm {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r";
    const std::size_t first = s.find_first_not_of(ws);
    if (first == std::string::npos) {
        return {};
    }
    const std::size_t last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

} // namespace

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open manifest " + path.string());
    }
    const std::filesystem::path base = path.parent_path();

    std::vector<ManifestEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') {
            continue;
        }

        ManifestEntry entry;
        // Labels sit after the last comma so image paths may contain commas.
        const std::size_t comma = text.find_last_of(',');
        std::string path_part = text;
        if (comma != std::string::npos) {
            const std::string label_part = trim(text.substr(comma + 1));
            if (label_part == "0" || label_part == "1") {
                entry.label = label_part == "1" ? 1 : 0;
                path_part = trim(text.substr(0, comma));
            } else if (label_part.empty()) {
                throw DatasetError(path.string() + ":" + std::to_string(line_no) +
                                   ": empty label after comma");
            } else {
                throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": bad label '" +
                                   label_part + "' (must be 0 or 1)");
            }
        }
        if (path_part.empty()) {
            throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": empty image path");
        }

        entry.as_written = path_part;
        std::filesystem::path img(path_part);
        entry.path = img.is_absolute() ? img : base / img;
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace hogsvm
