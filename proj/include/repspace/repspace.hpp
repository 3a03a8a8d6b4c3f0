#ifndef REPSPACE_REPSPACE_HPP
#define REPSPACE_REPSPACE_HPP

#include "fn_literal.hpp"

#endif  // REPSPACE_REPSPACE_HPP
