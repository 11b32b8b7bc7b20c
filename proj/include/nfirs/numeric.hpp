// SPDX-License-Identifier: Apache-2.0
//
// nfirs - wideband near-field IRS beamforming laboratory
// Copyright (C) 2026 The nfirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NFIRS_NUMERIC_HPP
#define NFIRS_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nfirs
{
    // Neumaier-compensated accumulator. Deterministic for a fixed insertion order.
    class CompensatedSum
    {
    public:
        void add(double x)
        {
            const double t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
        }
        double value() const { return sum_ + comp_; }

    private:
        double sum_ = 0.0;
        double comp_ = 0.0;
    };

    class ComplexCompensatedSum
    {
    public:
        void add(const std::complex<double> &z)
        {
            re_.add(z.real());
            im_.add(z.imag());
        }
        std::complex<double> value() const { return {re_.value(), im_.value()}; }

    private:
        CompensatedSum re_, im_;
    };

    // Runs fn(i) for i in [0, n) on up to hardware_concurrency threads using a
    // static contiguous split. fn must only write state owned by index i, so the
    // result never depends on scheduling. The first exception is rethrown.
    template <typename Fn>
    void parallel_for(std::size_t n, Fn &&fn)
    {
        const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t workers = std::min(hw, n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::exception_ptr error;
        std::mutex error_lock;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi)
                break;
            pool.emplace_back([&, lo, hi]
                              {
                                  try
                                  {
                                      for (std::size_t i = lo; i < hi; ++i)
                                          fn(i);
                                  }
                                  catch (...)
                                  {
                                      std::lock_guard<std::mutex> guard(error_lock);
                                      if (!error)
                                          error = std::current_exception();
                                  } });
        }
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

} // namespace nfirs

#endif
