#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "snb/datagen.hpp"
#include "snb/graph.hpp"

namespace snb {

enum class CsvVariant {
    CsvBasic,
    CsvMergeForeign,
    CsvComposite,
    CsvCompositeMergeForeign,
};

std::string to_string(CsvVariant v);
CsvVariant parse_csv_variant(const std::string& name);

// Relative paths (under social_network/) plus row counts, header excluded.
struct FileManifestEntry {
    std::string path;
    std::size_t rows = 0;
};
using Manifest = std::vector<FileManifestEntry>;

// Writes social_network/{static,dynamic}/ under `dir`. Row order is sorted by
// primary id then secondary id, so identical snapshots produce identical bytes.
Manifest write_dataset(const GraphSnapshot& g, CsvVariant variant,
                       const std::filesystem::path& dir);

// Writes social_network/updateStream_0_0_{person,forum}.csv plus the
// updateStream.properties sidecar.
Manifest write_update_streams(const std::vector<UpdateEvent>& events,
                              const std::filesystem::path& dir);

struct UpdateStreamProperties {
    double updateInterleave = 0.0;  // mean gap between events, millis
    std::size_t numEvents = 0;
    std::int64_t startTime = 0;
    std::int64_t endTime = 0;
};

UpdateStreamProperties read_update_stream_properties(const std::filesystem::path& dir);

GraphSnapshot load_dataset(const std::filesystem::path& dir, CsvVariant variant);

std::vector<UpdateEvent> load_update_streams(const std::filesystem::path& dir);

}  // namespace snb
