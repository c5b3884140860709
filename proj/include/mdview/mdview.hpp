// Part of the mdview project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef MDVIEW_MDVIEW_HPP
#define MDVIEW_MDVIEW_HPP

#include "mdview/accessors.hpp"
#include "mdview/algorithms.hpp"
#include "mdview/core.hpp"
#include "mdview/error.hpp"
#include "mdview/extents.hpp"
#include "mdview/layouts.hpp"
#include "mdview/subspan.hpp"

#endif  // MDVIEW_MDVIEW_HPP
