#pragma once

#include "qss/analysis.hpp"
#include "qss/error.hpp"
#include "qss/evolution.hpp"
#include "qss/fields.hpp"
#include "qss/grid.hpp"
#include "qss/groundstate.hpp"
#include "qss/log.hpp"
#include "qss/observables.hpp"
#include "qss/orbit.hpp"
#include "qss/params.hpp"
#include "qss/presets.hpp"
#include "qss/snapshot.hpp"
#include "qss/transform.hpp"
#include "qss/types.hpp"
