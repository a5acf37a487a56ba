#pragma once

// Everything except the JSON helpers in jumpkit/io.hpp.
#include "jumpkit/core.hpp"
#include "jumpkit/exactla.hpp"
#include "jumpkit/laurent.hpp"
#include "jumpkit/presentations.hpp"
#include "jumpkit/alexinv.hpp"
#include "jumpkit/jumploci.hpp"
#include "jumpkit/tcone.hpp"
#include "jumpkit/resonance.hpp"
#include "jumpkit/toric.hpp"
#include "jumpkit/arrangements.hpp"
