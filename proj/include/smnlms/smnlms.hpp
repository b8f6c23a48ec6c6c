#pragma once

#include "smnlms/error.hpp"
#include "smnlms/filter_core.hpp"
#include "smnlms/report_io.hpp"
#include "smnlms/robustness.hpp"
#include "smnlms/signals.hpp"
#include "smnlms/sysid.hpp"
#include "smnlms/vector_ops.hpp"
