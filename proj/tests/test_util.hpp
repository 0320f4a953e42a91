#pragma once
#include <complex>

#include "thetaforge/core.hpp"

inline double rel_err(tf::cplx a, tf::cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
