#pragma once

namespace k3 {

// Build-time embedded copies of the data/ files.
extern const char* kFamiliesJson;
extern const char* kClassificationJson;
extern const char* kGoldenTablesJson;

} // namespace k3
