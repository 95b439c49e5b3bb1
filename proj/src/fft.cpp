#include "msst/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace msst {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

ComplexPlane c2c(const ComplexPlane& in, int sign) {
    ComplexPlane out(in.rows(), in.cols());
    ComplexPlane scratch = in;
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(static_cast<int>(in.rows()), static_cast<int>(in.cols()), as_fftw(scratch.data()),
                                as_fftw(out.data()), sign, kPlanFlags);
    }
    if (!plan) throw std::runtime_error("fftw: failed to create c2c plan");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

RealFft2::RealFft2(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("RealFft2: empty geometry");
    Plane<double> real(rows, cols);
    ComplexPlane half(rows, half_cols());
    std::lock_guard lock(planner_mutex());
    forward_plan_ = fftw_plan_dft_r2c_2d(static_cast<int>(rows), static_cast<int>(cols), real.data(),
                                         as_fftw(half.data()), kPlanFlags);
    inverse_plan_ = fftw_plan_dft_c2r_2d(static_cast<int>(rows), static_cast<int>(cols), as_fftw(half.data()),
                                         real.data(), kPlanFlags);
    if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("fftw: failed to create r2c/c2r plans");
}

RealFft2::~RealFft2() {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

ComplexPlane RealFft2::forward(const Plane<double>& in) const {
    if (in.rows() != rows_ || in.cols() != cols_) throw std::invalid_argument("RealFft2::forward: geometry mismatch");
    // r2c does not modify its input, but the FFTW signature is non-const.
    Plane<double> copy = in;
    ComplexPlane out(rows_, half_cols());
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), copy.data(), as_fftw(out.data()));
    return out;
}

void RealFft2::inverse(ComplexPlane& spectrum, Plane<double>& out) const {
    if (spectrum.rows() != rows_ || spectrum.cols() != half_cols())
        throw std::invalid_argument("RealFft2::inverse: geometry mismatch");
    out.resize(rows_, cols_);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), as_fftw(spectrum.data()), out.data());
    out *= 1.0 / static_cast<double>(rows_ * cols_);
}

Plane<double> RealFft2::inverse(ComplexPlane spectrum) const {
    Plane<double> out;
    inverse(spectrum, out);
    return out;
}

ComplexPlane fft2(const ComplexPlane& in) { return c2c(in, FFTW_FORWARD); }

ComplexPlane ifft2(const ComplexPlane& in) {
    ComplexPlane out = c2c(in, FFTW_BACKWARD);
    out /= static_cast<double>(in.rows() * in.cols());
    return out;
}

}  // namespace msst
