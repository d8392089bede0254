#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hogsvm {

// One dataset manifest line: "relative/path,label" with label 0 or 1.
// `path` is resolved against the manifest file's directory; `as_written`
// keeps the original text for output.
struct ManifestEntry {
    std::filesystem::path path;
    std::string as_written;
    std::optional<int> label;
};

// "#" comment lines and blank lines are skipped. The label may be omitted
// (bare path) for commands that do not need one; a present label must be 0
// or 1.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& manifest_path);

} // namespace hogsvm
