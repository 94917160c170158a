#pragma once

#include "qdcnot/cqca.hpp"
#include "qdcnot/protocol.hpp"
#include "qdcnot/raman.hpp"
#include "qdcnot/spin.hpp"
#include "qdcnot/statespace.hpp"
