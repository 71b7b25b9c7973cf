#pragma once

#include "naw/chunked_array.hpp"
#include "naw/dedup.hpp"
#include "naw/delaunay.hpp"
#include "naw/error.hpp"
#include "naw/geometry.hpp"
#include "naw/harness.hpp"
#include "naw/hull.hpp"
#include "naw/io.hpp"
#include "naw/verify.hpp"
