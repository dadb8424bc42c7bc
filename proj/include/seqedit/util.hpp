#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqedit {

/// Pairwise (cascade) summation: deterministic for a fixed input order and
/// better conditioned than a left fold.
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

std::string trim(std::string_view s);

std::vector<std::string> split_ws(std::string_view s);

std::vector<std::string> split_lines(std::string_view s);

/// Run fn(i) for i in [0, n) on `threads` workers (index-strided). Results
/// must be written by index into caller-owned storage, so output order never
/// depends on the thread count. Exceptions are rethrown on the caller thread.
void parallel_for_ordered(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace seqedit
