#include <catch2/catch_amalgamated.hpp>
#include "swheight/retraction.hpp"
