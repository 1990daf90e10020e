#pragma once

#include "amalgam/amalgam.hpp"
#include "amalgam/cli.hpp"
#include "amalgam/duality.hpp"
#include "amalgam/errors.hpp"
#include "amalgam/extreal.hpp"
#include "amalgam/laws.hpp"
#include "amalgam/norms.hpp"
#include "amalgam/parallel.hpp"
#include "amalgam/random.hpp"
#include "amalgam/rational.hpp"
#include "amalgam/serialize.hpp"
#include "amalgam/stepfn.hpp"
#include "amalgam/witnesses.hpp"
