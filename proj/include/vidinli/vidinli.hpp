#pragma once

#include "algebra.hpp"
#include "char2.hpp"
#include "charnot2.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "serialize.hpp"
