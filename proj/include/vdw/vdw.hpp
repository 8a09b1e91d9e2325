#pragma once

#include "coloring.hpp"
#include "cube_search.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "interval.hpp"
#include "limits.hpp"
#include "oracle.hpp"
#include "streamer.hpp"
#include "tower.hpp"
#include "vdw_numbers.hpp"
#include "witness.hpp"
