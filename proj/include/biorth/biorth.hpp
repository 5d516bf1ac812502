#pragma once

#include "deformation.hpp"
#include "discrete_garnier.hpp"
#include "errors.hpp"
#include "garnier.hpp"
#include "linalg.hpp"
#include "moments.hpp"
#include "pipeline.hpp"
#include "poly.hpp"
#include "random_weight.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "roots.hpp"
#include "scalar.hpp"
#include "spectral.hpp"
#include "toeplitz.hpp"
#include "weights.hpp"
