#ifndef OBPURSUIT_OBPURSUIT_HPP_
#define OBPURSUIT_OBPURSUIT_HPP_

#include "obpursuit/certificates.hpp"
#include "obpursuit/combinatorics.hpp"
#include "obpursuit/dictionaries.hpp"
#include "obpursuit/experiments.hpp"
#include "obpursuit/frames.hpp"
#include "obpursuit/lemmas.hpp"
#include "obpursuit/linalg.hpp"
#include "obpursuit/matrix_io.hpp"
#include "obpursuit/pursuits.hpp"
#include "obpursuit/rng.hpp"
#include "obpursuit/serialization.hpp"
#include "obpursuit/types.hpp"

#endif  // OBPURSUIT_OBPURSUIT_HPP_
