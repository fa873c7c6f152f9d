#pragma once

#include "probmet/bridge.hpp"
#include "probmet/construct.hpp"
#include "probmet/convert.hpp"
#include "probmet/io.hpp"
#include "probmet/morphism.hpp"
#include "probmet/rational.hpp"
#include "probmet/report.hpp"
#include "probmet/space.hpp"
#include "probmet/stepfn.hpp"
#include "probmet/tnorm.hpp"
#include "probmet/topology.hpp"
