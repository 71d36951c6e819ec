#pragma once

#include "ybx/dimension.hpp"
#include "ybx/entanglement.hpp"
#include "ybx/entangling_power.hpp"
#include "ybx/error.hpp"
#include "ybx/generation.hpp"
#include "ybx/io.hpp"
#include "ybx/random.hpp"
#include "ybx/tensor_core.hpp"
#include "ybx/yang_baxter.hpp"
