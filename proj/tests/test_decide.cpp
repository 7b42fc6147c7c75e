#include <catch_amalgamated.hpp>

#include "helpers.hpp"
