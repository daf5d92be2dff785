#pragma once

#include "lcube/data.hpp"
#include "lcube/errors.hpp"
#include "lcube/harness.hpp"
#include "lcube/mdl.hpp"
#include "lcube/metrics.hpp"
#include "lcube/random.hpp"
#include "lcube/report.hpp"
#include "lcube/spline.hpp"
#include "lcube/version.hpp"
