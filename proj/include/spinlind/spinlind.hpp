#pragma once

#include "spinlind/bath.hpp"
#include "spinlind/config.hpp"
#include "spinlind/errors.hpp"
#include "spinlind/kinetics.hpp"
#include "spinlind/liouville.hpp"
#include "spinlind/model.hpp"
#include "spinlind/oracle.hpp"
#include "spinlind/output.hpp"
#include "spinlind/spectral.hpp"
#include "spinlind/transport.hpp"
