#pragma once

#include "dlmq/circuit.hpp"
#include "dlmq/errors.hpp"
#include "dlmq/experiments.hpp"
#include "dlmq/gate_processor.hpp"
#include "dlmq/gates.hpp"
#include "dlmq/learning_machine.hpp"
#include "dlmq/linalg.hpp"
#include "dlmq/network.hpp"
#include "dlmq/oracle.hpp"
#include "dlmq/rng.hpp"
