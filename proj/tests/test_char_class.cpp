#include <catch2/catch_amalgamated.hpp>
#include "swheight/char_class.hpp"
