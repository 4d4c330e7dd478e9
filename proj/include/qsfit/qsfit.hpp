#pragma once

#include "qsfit/analysis.hpp"
#include "qsfit/errors.hpp"
#include "qsfit/fit.hpp"
#include "qsfit/ingest.hpp"
#include "qsfit/lm.hpp"
#include "qsfit/models.hpp"
#include "qsfit/report.hpp"
