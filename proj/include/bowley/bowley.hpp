#pragma once

#include "bowley/error.hpp"
#include "bowley/format.hpp"
#include "bowley/series.hpp"
#include "bowley/lsq.hpp"
#include "bowley/growth.hpp"
#include "bowley/invariants.hpp"
#include "bowley/production_fit.hpp"
#include "bowley/shares.hpp"
#include "bowley/checks.hpp"
#include "bowley/report.hpp"
#include "bowley/plot.hpp"
#include "bowley/cli.hpp"
