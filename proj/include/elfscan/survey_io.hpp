#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "elfscan/biot_savart.hpp"
#include "elfscan/field_model.hpp"
#include "elfscan/hazard.hpp"

namespace elfscan {

// Survey CSV. Header row is mandatory:
//   laptop_id,screen_size_in,power_source,side,point_id,bx_uT,by_uT,bz_uT,b_rms_uT
// The four measurement columns may carry a different unit suffix (nT, uT,
// mT, T); values are converted to microtesla on ingest. Per row, either the
// component trio or b_rms is present, never both.
//
// Rows are grouped into experiment cells by (side, power_source); cells come
// back in canonical order: top/AC, top/battery, bottom/AC, bottom/battery.
// Throws ParseError (with line number), UnitError, EmptyInputError, IoError.
std::vector<SurveyDataset> ingest_csv(const std::filesystem::path& path);

// Canonical writer, microtesla columns, shortest round-trip float format.
void write_survey_csv(const std::filesystem::path& path,
                      const std::vector<SurveyDataset>& datasets);

// Wire-model file: one `laptop <id> <screen_in>` header per laptop, then
// path blocks
//   path <current_A>
//     <x> <y> <z>        (vertices, meters, one per line)
//   end
// '#' starts a comment. Throws ParseError with the offending line.
std::map<std::string, LaptopModel> read_model_file(const std::filesystem::path& path);

void write_model_file(const std::filesystem::path& path,
                      const std::map<std::string, LaptopModel>& models);

}  // namespace elfscan
