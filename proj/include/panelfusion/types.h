#ifndef PANELFUSION_TYPES_H_
#define PANELFUSION_TYPES_H_

#include <cstdint>
#include <limits>
#include <string>

namespace panelfusion {

using NodeIndex = int32_t;
using ArcIndex = int64_t;
using FlowQuantity = int64_t;
using CostValue = int64_t;

// Accumulator for sums of cost * flow. Per-arc products of two int64 values
// always fit, and so does any realistic sum of them.
using WideCost = __int128;

inline constexpr FlowQuantity kUnboundedCapacity =
    std::numeric_limits<FlowQuantity>::max();

std::string WideToString(WideCost value);

// Parses a base-10 signed integer that may exceed the int64 range.
// Throws std::invalid_argument on malformed input.
WideCost WideFromString(const std::string& text);

}  // namespace panelfusion

#endif  // PANELFUSION_TYPES_H_
