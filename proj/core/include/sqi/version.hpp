#pragma once

#define SQI_VERSION_MAJOR 0
#define SQI_VERSION_MINOR 1
#define SQI_VERSION_PATCH 0
#define SQI_VERSION_STRING "0.1.0"

namespace sqi {

inline const char* version() { return SQI_VERSION_STRING; }

} // namespace sqi
