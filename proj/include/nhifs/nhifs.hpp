#pragma once

#include "nhifs/attractors.hpp"
#include "nhifs/chaos.hpp"
#include "nhifs/claims.hpp"
#include "nhifs/config.hpp"
#include "nhifs/convergence.hpp"
#include "nhifs/corpus.hpp"
#include "nhifs/distance.hpp"
#include "nhifs/error.hpp"
#include "nhifs/fixed_points.hpp"
#include "nhifs/geometry.hpp"
#include "nhifs/grid.hpp"
#include "nhifs/hutchinson.hpp"
#include "nhifs/ifs.hpp"
#include "nhifs/io.hpp"
#include "nhifs/map.hpp"
#include "nhifs/symbolic.hpp"
#include "nhifs/word.hpp"
