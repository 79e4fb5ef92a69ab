#pragma once

// Data-parallel scan kernels. Every kernel has a serial reference version and
// an OpenMP version with identical results; the dispatching entry points pick
// one according to the process-wide execution mode.

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

namespace arborlab::kernels {

enum class Mode { Serial, OpenMP };

void set_mode(Mode m);
Mode mode();
// 0 restores the OpenMP default (all cores).
void set_threads(int n);
int threads();

// Smallest i in [0, n) with pred(i), scanning in order.
template <typename Pred>
std::optional<std::size_t> first_match_serial(std::size_t n, Pred&& pred) {
    for (std::size_t i = 0; i < n; ++i)
        if (pred(i)) return i;
    return std::nullopt;
}

// Same result as first_match_serial. Indices are evaluated in blocks; every
// index of a block is evaluated in parallel and the smallest hit wins, so work
// past the first hit is bounded by one block.
template <typename Pred>
std::optional<std::size_t> first_match_omp(std::size_t n, Pred&& pred) {
    const std::size_t block = static_cast<std::size_t>(omp_get_max_threads()) * 4;
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t end = std::min(n, start + block);
        std::vector<char> hit(end - start, 0);
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t i = start; i < end; ++i) {
            try {
                hit[i - start] = pred(i) ? 1 : 0;
            } catch (...) {
#pragma omp critical(arborlab_kernel_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        for (std::size_t i = start; i < end; ++i)
            if (hit[i - start]) return i;
    }
    return std::nullopt;
}

template <typename Pred>
std::optional<std::size_t> first_match(std::size_t n, Pred&& pred) {
    if (mode() == Mode::OpenMP) return first_match_omp(n, pred);
    return first_match_serial(n, pred);
}

// out[i] = fn(i) for i in [0, n).
template <typename R, typename Fn>
std::vector<R> map_serial(std::size_t n, Fn&& fn) {
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
}

template <typename R, typename Fn>
std::vector<R> map_omp(std::size_t n, Fn&& fn) {
    std::vector<std::optional<R>> slots(n);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            slots[i].emplace(fn(i));
        } catch (...) {
#pragma omp critical(arborlab_kernel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <typename R, typename Fn>
std::vector<R> map(std::size_t n, Fn&& fn) {
    if (mode() == Mode::OpenMP) return map_omp<R>(n, fn);
    return map_serial<R>(n, fn);
}

// fn(i) for every i in [0, n); fn must only write state owned by index i.
template <typename Fn>
void for_each_index_serial(std::size_t n, Fn&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <typename Fn>
void for_each_index_omp(std::size_t n, Fn&& fn) {
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

template <typename Fn>
void for_each_index(std::size_t n, Fn&& fn) {
    if (mode() == Mode::OpenMP) return for_each_index_omp(n, fn);
    for_each_index_serial(n, fn);
}

}  // namespace arborlab::kernels
