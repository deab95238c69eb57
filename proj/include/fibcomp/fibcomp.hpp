#pragma once

#include "fibcomp/analytic.hpp"
#include "fibcomp/bijection.hpp"
#include "fibcomp/core.hpp"
#include "fibcomp/counting.hpp"
#include "fibcomp/enumerate.hpp"
#include "fibcomp/error.hpp"
#include "fibcomp/genfun.hpp"
#include "fibcomp/hpreal.hpp"
#include "fibcomp/rational.hpp"
#include "fibcomp/verify.hpp"
