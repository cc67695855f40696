#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sota/distribution.hpp"

namespace sota {

// Tally of logical convolution products. Owned by whoever runs a solve; the
// kernels only bump it when handed one.
struct ConvolutionCounter {
  std::uint64_t products = 0;
  void add(std::uint64_t n = 1) noexcept { products += n; }
};

enum class ConvolutionKernel { Direct, Fft };

std::string_view to_string(ConvolutionKernel kernel);

// Full linear convolution of two sequences (length a.size() + b.size() - 1).
std::vector<double> convolve_sequences(std::span<const double> a, std::span<const double> b,
                                       ConvolutionKernel kernel = ConvolutionKernel::Direct);

// Distribution of X + Y for independent X ~ a, Y ~ b. Offsets add.
DiscretePdf convolve(const DiscretePdf& a, const DiscretePdf& b, ConvolutionCounter* counter = nullptr);

// As convolve(), computed in the frequency domain.
DiscretePdf convolve_fft(const DiscretePdf& a, const DiscretePdf& b,
                         ConvolutionCounter* counter = nullptr);

// As convolve(), keeping only cells <= budget. nullopt when nothing is left.
std::optional<DiscretePdf> convolve_truncated(const DiscretePdf& a, const DiscretePdf& b, int budget,
                                              ConvolutionCounter* counter = nullptr,
                                              ConvolutionKernel kernel = ConvolutionKernel::Direct);

// Evaluates out[i] = sum_w pdf(w) * f(first + i - w) over the support of the
// pdf, with f(x) = 0 for x < 0. Every referenced index of f must exist,
// i.e. first + out.size() - 1 - pdf.offset() < f.size(). This is the block
// update of the label-setting solver; it does not touch any counter.
void convolve_window(const DiscretePdf& pdf, std::span<const double> f, int first,
                     std::span<double> out, ConvolutionKernel kernel = ConvolutionKernel::Direct);

}  // namespace sota
