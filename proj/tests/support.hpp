#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drtomo/core.hpp"
#include "drtomo/random.hpp"
#include "drtomo/subsolvers.hpp"

namespace testsupport {

// Rows are given top row first, as they would be drawn.
drtomo::BinaryImage image_from_rows(const std::vector<std::string>& rows);

// Bit (q-1)*m + (p-1) of bits is pixel (p,q).
drtomo::BinaryImage image_from_bits(int m, int n, std::uint64_t bits);

drtomo::BinaryImage random_image(int m, int n, double density, drtomo::Rng& rng);

// Number of images satisfying inst, by trying all 2^(mn) images (mn <= 24).
std::size_t brute_force_count(const drtomo::Instance& inst);

// Number of block fillings with nu ones per block that realize the pair sums.
std::size_t brute_force_sub_count(const drtomo::SubInstance& sub);

// Injective key of a small instance (all values below 17), for grouping.
std::uint64_t signature(const drtomo::Instance& inst);

}  // namespace testsupport
