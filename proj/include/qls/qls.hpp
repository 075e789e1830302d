#pragma once

#include "qls/error.hpp"
#include "qls/linalg.hpp"
#include "qls/random.hpp"
#include "qls/channels.hpp"
#include "qls/entropy.hpp"
#include "qls/optimize.hpp"
#include "qls/variational.hpp"
#include "qls/ls_constants.hpp"
#include "qls/discrete_ls.hpp"
#include "qls/group_hyper.hpp"
#include "qls/parallel.hpp"
#include "qls/io.hpp"
#include "qls/verify.hpp"
#include "qls/cli.hpp"
