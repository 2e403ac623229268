// Umbrella header.
#pragma once

#include "ehspin/clifford.hpp"
#include "ehspin/common.hpp"
#include "ehspin/geometry.hpp"
#include "ehspin/singularity.hpp"
#include "ehspin/solutions.hpp"
#include "ehspin/spinor_calculus.hpp"
