#pragma once

// Umbrella header: the whole solver pipeline.

#include "ssr/cli.hpp"            // IWYU pragma: export
#include "ssr/cutting_plane.hpp"  // IWYU pragma: export
#include "ssr/extraction.hpp"     // IWYU pragma: export
#include "ssr/instance.hpp"       // IWYU pragma: export
#include "ssr/lp.hpp"             // IWYU pragma: export
#include "ssr/rational.hpp"       // IWYU pragma: export
#include "ssr/separation.hpp"     // IWYU pragma: export
#include "ssr/verify.hpp"         // IWYU pragma: export
