// Copyright 2026 The car-fock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "carfock/car.hpp"
#include "carfock/demo.hpp"
#include "carfock/errors.hpp"
#include "carfock/fock.hpp"
#include "carfock/matrix.hpp"
#include "carfock/reduction.hpp"
#include "carfock/report.hpp"
#include "carfock/state_expression.hpp"
#include "carfock/superselection.hpp"
