#pragma once

#include "foresight/belief.hpp"
#include "foresight/decision.hpp"
#include "foresight/error.hpp"
#include "foresight/event_space.hpp"
#include "foresight/importance.hpp"
#include "foresight/oracle.hpp"
#include "foresight/subset.hpp"
#include "foresight/tolerances.hpp"
#include "foresight/unforeseen.hpp"
#include "foresight/utility.hpp"
