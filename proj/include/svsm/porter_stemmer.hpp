#pragma once

#include <string>
#include <string_view>

namespace svsm {

// Porter's 1980 suffix-stripping stemmer, original rule set.
// Input is expected lowercase ASCII; other bytes are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace svsm
