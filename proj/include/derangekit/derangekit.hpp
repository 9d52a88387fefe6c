#pragma once

#include "derangekit/bigint.hpp"
#include "derangekit/catalog.hpp"
#include "derangekit/constraints.hpp"
#include "derangekit/counting.hpp"
#include "derangekit/numeric.hpp"
#include "derangekit/oeis.hpp"
#include "derangekit/oracle.hpp"
