#pragma once

#include "ltc/partition.hpp"
#include "ltc/diagram.hpp"
#include "ltc/flow.hpp"
#include "ltc/alpha.hpp"
#include "ltc/coloring_search.hpp"
#include "ltc/cds.hpp"
#include "ltc/tableau.hpp"
#include "ltc/color4.hpp"
#include "ltc/io.hpp"
#include "ltc/harness.hpp"
