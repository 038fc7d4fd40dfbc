#pragma once

#include "nilgeo/error.hpp"
#include "nilgeo/words.hpp"
#include "nilgeo/basis.hpp"
#include "nilgeo/coords.hpp"
#include "nilgeo/magnus.hpp"
#include "nilgeo/geometry.hpp"
#include "nilgeo/harness.hpp"
