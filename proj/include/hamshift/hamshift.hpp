#pragma once

#include "binary_word.hpp"
#include "connectivity.hpp"
#include "construction.hpp"
#include "level_io.hpp"
#include "parallel.hpp"
#include "pattern_matching.hpp"
#include "sturmian.hpp"
#include "verification.hpp"
