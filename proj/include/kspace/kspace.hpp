#pragma once

#include <kspace/circle.hpp>
#include <kspace/disk_algebra.hpp>
#include <kspace/errors.hpp>
#include <kspace/kernel_op.hpp>
#include <kspace/measure.hpp>
#include <kspace/norm_engine.hpp>
#include <kspace/self_map.hpp>
