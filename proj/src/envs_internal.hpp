#pragma once

#include "puzzlebench/environments.hpp"

namespace pzb {

const Environment& hanoi_environment();
const Environment& checkers_environment();
const Environment& river_environment();
const Environment& blocks_environment();

}  // namespace pzb
