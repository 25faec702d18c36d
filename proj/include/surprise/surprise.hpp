#pragma once

#include "surprise/closed_form.hpp"
#include "surprise/csv.hpp"
#include "surprise/experiments.hpp"
#include "surprise/model.hpp"
#include "surprise/scaling.hpp"
#include "surprise/schemes.hpp"
#include "surprise/tree.hpp"
#include "surprise/tree_io.hpp"
