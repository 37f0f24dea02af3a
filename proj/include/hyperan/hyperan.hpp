// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header: the whole library in one include.

#include "analytic.hpp"
#include "features.hpp"
#include "fft.hpp"
#include "io.hpp"
#include "qft.hpp"
#include "quaternion.hpp"
#include "signals.hpp"
#include "stqft.hpp"
