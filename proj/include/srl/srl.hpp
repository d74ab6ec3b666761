#pragma once

#include "srl/error.hpp"
#include "srl/random.hpp"
#include "srl/graph/degree_distribution.hpp"
#include "srl/graph/generators.hpp"
#include "srl/graph/interference_graph.hpp"
#include "srl/graph/io.hpp"
#include "srl/mac/estimate.hpp"
#include "srl/mac/lazy.hpp"
#include "srl/mac/oracle.hpp"
#include "srl/mac/slot.hpp"
#include "srl/mac/types.hpp"
#include "srl/fluid/assumption.hpp"
#include "srl/fluid/integrate.hpp"
#include "srl/fluid/io.hpp"
#include "srl/fluid/measure.hpp"
#include "srl/fluid/rhs.hpp"
#include "srl/xp/commands.hpp"
#include "srl/xp/figures.hpp"
#include "srl/xp/report.hpp"
#include "srl/xp/spec.hpp"
