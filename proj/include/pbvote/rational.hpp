#pragma once

#include <gmpxx.h>

#include <string>

namespace pbvote {

// All budget shares, q values and payments are exact rationals. Doubles only
// appear in display-oriented statistics.
using Rational = mpq_class;

// Whole currency units (CHF). Costs and budgets are always integers.
using Money = long long;

Rational rat(Money v);
Rational rat(Money num, Money den);

// Canonical "num/den" form, denominator always present ("3/1" for integers).
std::string to_fraction_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational fraction_from_string(const std::string& s);

double to_double(const Rational& r);

}  // namespace pbvote
