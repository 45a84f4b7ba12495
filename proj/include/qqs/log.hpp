#pragma once

#include <functional>
#include <string_view>

namespace qqs {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the warning sink (default: stderr) and returns the previous one.
WarningSink set_warning_sink(WarningSink sink);
void log_warning(std::string_view message);

}  // namespace qqs
