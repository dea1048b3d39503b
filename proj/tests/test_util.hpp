#pragma once

#include <initializer_list>
#include <memory>
#include <string>

#include "pg/pcgroup.hpp"

namespace pgtest {

inline pg::Element elem(std::initializer_list<int> exps) {
  pg::Element a;
  unsigned i = 0;
  for (int e : exps) a.e[i++] = (uint16_t)e;
  return a;
}

// spec'd file texts used across the suites
inline constexpr const char* kD8 =
    "prime 2\ngens 3\npower 2 = 3\ncomm 2 1 = 3\ndef 3 = 2 2\n";

inline constexpr const char* kQ8 =
    "prime 2\ngens 3\npower 1 = 3\npower 2 = 3\ncomm 2 1 = 3\n";

inline constexpr const char* kHuppert5 =
    "prime 5\ngens 4\ncomm 2 1 = 3\ncomm 3 1 = 4\n"
    "def 3 = 2^-1 1^-1 2 1\ndef 4 = 3^-1 1^-1 3 1\n";

inline constexpr const char* kExtra5 =
    "prime 5\ngens 3\ncomm 2 1 = 3\ndef 3 = 2^-1 1^-1 2 1\n";

inline std::shared_ptr<pg::GroupContext> make_group(const char* text,
                                                    const char* name) {
  return std::make_shared<pg::GroupContext>(pg::parse_pcp(text, name));
}

}  // namespace pgtest
