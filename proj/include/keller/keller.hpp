#pragma once

#include "keller/errors.hpp"
#include "keller/exactfield.hpp"
#include "keller/linalg.hpp"
#include "keller/multipoly.hpp"
#include "keller/polymap.hpp"
#include "keller/properties.hpp"
#include "keller/constructions.hpp"
#include "keller/identities.hpp"
#include "keller/serialize.hpp"
