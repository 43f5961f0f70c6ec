#pragma once

#include "mimdet/detector.hpp"
#include "mimdet/error.hpp"
#include "mimdet/experiments.hpp"
#include "mimdet/image.hpp"
#include "mimdet/mimetic.hpp"
#include "mimdet/perturb.hpp"
#include "mimdet/sparse.hpp"
#include "mimdet/synthetic.hpp"
