#pragma once

namespace hallstone {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "hallstone-report/1";

} // namespace hallstone
