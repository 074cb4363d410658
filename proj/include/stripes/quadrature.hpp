#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace stripes {

// Thrown when an adaptive rule exhausts its subdivision budget before
// reaching the requested tolerance.  Carries the best value found and the
// error estimate actually achieved so callers can decide what to do.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double achieved, double requested)
        : std::runtime_error(what), value_(value), achieved_(achieved), requested_(requested) {}
    double value() const { return value_; }
    double achieved_error() const { return achieved_; }
    double requested_tolerance() const { return requested_; }

private:
    double value_, achieved_, requested_;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;      // stop when error <= max(abs_tol, rel_tol*|value|)
    int max_intervals = 4000;  // subdivision budget
    bool throw_on_failure = true;
};

// Adaptive Gauss(7)/Kronrod(15) integration of f over the finite interval
// [a, b]: bisect the segment with the largest error estimate until the
// summed estimate meets tolerance.  Deterministic for a given f, a, b.
IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     const QuadratureOptions& opts = {});

} // namespace stripes
