#pragma once

#include "latcheb/admissibility.hpp"
#include "latcheb/cubature.hpp"
#include "latcheb/io.hpp"
#include "latcheb/lower_set.hpp"
#include "latcheb/multi_index.hpp"
#include "latcheb/rational.hpp"
#include "latcheb/search.hpp"
