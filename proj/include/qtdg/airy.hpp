#pragma once

#include "qtdg/jet.hpp"

namespace qtdg {

/// Airy function Ai on [-12, 2] from its Maclaurin series summed in 128-bit floating point.
/// Throws std::out_of_range outside that interval.
double airy_ai(double x);
double airy_ai_prime(double x);

/// Ai(z) for a jet z; higher derivatives follow from Ai'' = z Ai.
Jet airy_ai(const Jet& z);

}  // namespace qtdg
