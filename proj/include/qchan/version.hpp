#pragma once

namespace qchan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qchan
