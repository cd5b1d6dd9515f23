#pragma once

#include "fptenum/backdoor.hpp"
#include "fptenum/csp.hpp"
#include "fptenum/enumcore.hpp"
#include "fptenum/errors.hpp"
#include "fptenum/generators.hpp"
#include "fptenum/io.hpp"
#include "fptenum/maxones.hpp"
#include "fptenum/vertexcover.hpp"
