#pragma once

#include "cubicspin/arith.hpp"
#include "cubicspin/cm_ap.hpp"
#include "cubicspin/eisenstein.hpp"
#include "cubicspin/errors.hpp"
#include "cubicspin/io.hpp"
#include "cubicspin/quad_order.hpp"
#include "cubicspin/records.hpp"
#include "cubicspin/scan.hpp"
#include "cubicspin/spin.hpp"
#include "cubicspin/verify.hpp"
