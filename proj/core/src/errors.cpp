#include "gmcat/errors.hpp"
