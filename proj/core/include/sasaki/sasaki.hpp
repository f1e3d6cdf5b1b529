#pragma once

#include "sasaki/common.hpp"
#include "sasaki/constructions.hpp"
#include "sasaki/exact.hpp"
#include "sasaki/flow.hpp"
#include "sasaki/killing.hpp"
#include "sasaki/metric.hpp"
#include "sasaki/report.hpp"
#include "sasaki/sphere.hpp"
#include "sasaki/verify.hpp"
