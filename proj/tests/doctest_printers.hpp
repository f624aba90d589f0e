#pragma once

#include <doctest.h>

#include "qpart/partition.hpp"
#include "qpart/series.hpp"

namespace doctest {

template <>
struct StringMaker<qpart::MultiSeries> {
  static String convert(const qpart::MultiSeries& s) { return qpart::to_string(s).c_str(); }
};

template <>
struct StringMaker<qpart::Partition> {
  static String convert(const qpart::Partition& p) { return p.to_string().c_str(); }
};

}  // namespace doctest
