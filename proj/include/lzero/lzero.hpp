#pragma once

#include "lzero/arith.hpp"
#include "lzero/bernoulli.hpp"
#include "lzero/cyclo.hpp"
#include "lzero/dirichlet.hpp"
#include "lzero/errors.hpp"
#include "lzero/intpoly.hpp"
#include "lzero/lab.hpp"
#include "lzero/padic.hpp"
