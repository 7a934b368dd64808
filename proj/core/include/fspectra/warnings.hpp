#pragma once

#include <functional>
#include <string_view>

namespace fspectra {

using WarningHandler = std::function<void(std::string_view)>;

/// Installs the sink for non-fatal diagnostics; returns the previous one.
/// The default handler writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace fspectra
