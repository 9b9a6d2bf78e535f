#pragma once

#include "chowfiber/int_matrix.hpp"
#include "chowfiber/normal_form.hpp"
#include "chowfiber/determinantal.hpp"
#include "chowfiber/lattice.hpp"
#include "chowfiber/galois.hpp"
#include "chowfiber/fiber_model.hpp"
#include "chowfiber/chow.hpp"
#include "chowfiber/render.hpp"
