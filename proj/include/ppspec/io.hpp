#ifndef PPSPEC_IO_HPP
#define PPSPEC_IO_HPP

#include "ppspec/hull.hpp"
#include "ppspec/spectra.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace ppspec {

using nlohmann::json;

json region_to_json(const Region& r);
Region region_from_json(const json& j);

/// Point-set file: exact coordinates are [a, b] pairs meaning a + b tau.
json patch_to_json(const MultiSetPatch& patch);
MultiSetPatch patch_from_json(const json& j);

json cluster_to_json(const Cluster& c);
/// Inverse of cluster_to_json: one list of points per color. In 1D a point
/// is a number or an exact [a, b] pair; in 2D it is [x, y].
Cluster cluster_from_json(const json& j, int dim);
json interval_to_json(const Interval& v);

json frequency_summary(const FrequencyEstimate& e);
json partition_to_json(const HullPartition& part);
json metric_to_json(const MetricBracket& m);

/// Columns joined by `sep`; "," gives CSV with a header, " " gives
/// gnuplot-ready data with a commented header.
std::string frequency_table(const FrequencyEstimate& e, char sep = ',');
std::string autocorr_table(const AutocorrelationMeasure& g, char sep = ',');
std::string diffraction_table(const DiffractionEstimate& d, char sep = ',');

void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);

} // namespace ppspec

#endif
