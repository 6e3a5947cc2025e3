#pragma once

#include "gsg/bilevel.hpp"
#include "gsg/bisect.hpp"
#include "gsg/errors.hpp"
#include "gsg/evaluate.hpp"
#include "gsg/instance_io.hpp"
#include "gsg/level_k.hpp"
#include "gsg/lp.hpp"
#include "gsg/model.hpp"
#include "gsg/pattern_search.hpp"
#include "gsg/pwl.hpp"
#include "gsg/qri.hpp"
#include "gsg/routine.hpp"
#include "gsg/select.hpp"
#include "gsg/tips.hpp"
