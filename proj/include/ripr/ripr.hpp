#pragma once

#include "ripr/rat.hpp"
#include "ripr/matrix.hpp"
#include "ripr/seqs.hpp"
#include "ripr/matgen.hpp"
#include "ripr/digits.hpp"
#include "ripr/colourings.hpp"
#include "ripr/search.hpp"
#include "ripr/experiment.hpp"
