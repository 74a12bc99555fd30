#pragma once

#include "ambit/ambit.hpp"
#include "ambit/cancellation.hpp"
#include "ambit/error.hpp"
#include "ambit/io.hpp"
#include "ambit/measure.hpp"
#include "ambit/orbit.hpp"
#include "ambit/props.hpp"
#include "ambit/rational.hpp"
#include "ambit/report.hpp"
#include "ambit/semigroup.hpp"
#include "ambit/simplex.hpp"
#include "ambit/uniform.hpp"
