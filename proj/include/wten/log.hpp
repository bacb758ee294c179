#pragma once

#include <functional>
#include <string>

namespace wten {

using WarningSink = std::function<void(const std::string&)>;

/// Replaces the warning sink (default: one line on stderr). Returns the old one.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

}  // namespace wten
