#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace fbwave::cli {

using ConfigMap = std::map<std::string, std::string>;

/// key = value lines; '#' starts a comment. Unknown keys are rejected.
ConfigMap parse_config(const std::string& text, const std::string& origin = "config");
ConfigMap read_config_file(const std::filesystem::path& path);

double config_number(const ConfigMap& cfg, const std::string& key);
int config_int(const ConfigMap& cfg, const std::string& key);
bool config_bool(const ConfigMap& cfg, const std::string& key);

}  // namespace fbwave::cli
