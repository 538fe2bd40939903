#pragma once

#include "regcover/core.hpp"
#include "regcover/regularity.hpp"
#include "regcover/bounds.hpp"
#include "regcover/tensor.hpp"
#include "regcover/sketch.hpp"
#include "regcover/polyopt.hpp"
#include "regcover/nnbound.hpp"
#include "regcover/verify.hpp"
#include "regcover/io.hpp"
