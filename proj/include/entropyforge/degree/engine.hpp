/*
   Copyright 2026 The entropyforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ENTROPYFORGE_DEGREE_ENGINE_HPP
#define ENTROPYFORGE_DEGREE_ENGINE_HPP

#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "entropyforge/core/random_stream.hpp"
#include "entropyforge/core/rational_function.hpp"
#include "entropyforge/dsl/defs.hpp"
#include "entropyforge/io/format.hpp"

namespace entropyforge::degree {

enum class Mode { Exact, Modular };

struct DegreeOptions {
    int entries = 16;  // longest published sequence plus margin
    Mode mode = Mode::Exact;
    uint64_t seed = kDefaultSeed;
    int max_reseeds = 3;
    int jobs = 1;
    long max_degree = 200000;  // resource guard
    std::function<void(int, long)> progress;  // diagnostic stream hook (n, d_n)
};

/// Reduced degree sequence of the iterates, with growth ratios and entropy
/// estimates.  Degrees are max(deg num, deg den) of the fully reduced
/// iterate; the first `order` entries are the initialization degrees
/// (0, ..., 0, 1) so indices align with published listings.
struct DegreeSequence {
    std::vector<long> degrees;
    std::vector<Rat> ratios;
    double entropy_log_ratio = 0.0;
    double entropy_fit = 0.0;
    Mode mode = Mode::Exact;
    std::vector<uint64_t> primes;
    bool reliable = true;
    bool fell_back_exact = false;
    int order = 0;
    uint64_t seed = 0;
};

/// Thrown when the resource guard trips; carries what was computed so far.
class ResourceLimit : public Error {
  public:
    ResourceLimit(std::string what, DegreeSequence partial)
        : Error(ErrorKind::resource, std::move(what)), partial_(std::move(partial)) {}
    const DegreeSequence& partial() const { return partial_; }

  private:
    DegreeSequence partial_;
};

namespace detail {

/// Draws the generic initial constants: order-1 nonzero small rationals, the
/// singular entry value excluded, mutually distinct.
inline std::vector<Rat> generic_constants(const dsl::MappingDef& map, int count, uint64_t seed) {
    RandomStream rng(seed);
    std::vector<Rat> exclude;
    if (map.singular_entry) exclude.push_back(*map.singular_entry);
    std::vector<Rat> out;
    while (static_cast<int>(out.size()) < count) {
        Rat r = rng.next_small_rational(exclude);
        out.push_back(r);
        exclude.push_back(r);  // keep the draws distinct
    }
    return out;
}

template <class RF>
std::vector<long> iterate_degrees(const dsl::MappingDef& map, int entries,
                                  const std::vector<Rat>& consts, const DegreeOptions& opt) {
    const int order = map.order();
    std::vector<RF> window;
    window.reserve(static_cast<size_t>(order));
    for (int i = 0; i + 1 < order; ++i) window.push_back(RF::from_rational(consts[static_cast<size_t>(i)]));
    window.push_back(RF::variable());

    std::vector<long> degrees;
    degrees.reserve(static_cast<size_t>(entries));
    for (int i = 0; i < std::min(order, entries); ++i) degrees.push_back(i + 1 == order ? 1 : 0);

    for (int j = order; j < entries; ++j) {
        const int n = j - map.hi_shift;  // absolute base index of this step
        auto var = [&](int s) -> RF {
            int idx = n + s - (j - order);  // position in the sliding window
            return window[static_cast<size_t>(idx)];
        };
        auto coeff = [&](const std::string& name, int s) -> RF {
            return RF::from_rational(map.coeff_spec(name).at(n + s));
        };
        RF next = dsl::eval1d<RF>(*map.rhs, var, coeff);
        long d = next.degree();
        degrees.push_back(d);
        if (opt.progress) opt.progress(j, d);
        if (d > opt.max_degree) {
            DegreeSequence partial;
            partial.degrees = degrees;
            partial.order = order;
            throw ResourceLimit("degree " + std::to_string(d) + " exceeds the configured bound " +
                                    std::to_string(opt.max_degree),
                                std::move(partial));
        }
        window.erase(window.begin());
        window.push_back(std::move(next));
    }
    return degrees;
}

template <class RF>
std::vector<long> degrees_with_reseed(const dsl::MappingDef& map, int entries, uint64_t seed,
                                      const DegreeOptions& opt) {
    uint64_t s = seed;
    for (int attempt = 0;; ++attempt) {
        try {
            return iterate_degrees<RF>(map, entries, generic_constants(map, map.order() - 1, s), opt);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::invalid_input || attempt >= opt.max_reseeds) {
                if (e.kind() == ErrorKind::invalid_input)
                    throw Error(ErrorKind::degenerate_orbit,
                                std::string("orbit hit an exact singularity repeatedly: ") + e.what());
                throw;
            }
            s = RandomStream(s).next_u64();  // reseed and retry
        }
    }
}

inline void finalize(DegreeSequence& seq) {
    seq.ratios.clear();
    for (size_t i = 0; i + 1 < seq.degrees.size(); ++i) {
        if (seq.degrees[i] > 0 && seq.degrees[i + 1] > 0) {
            seq.ratios.emplace_back(seq.degrees[i + 1], seq.degrees[i]);
        }
    }
    if (!seq.ratios.empty()) {
        seq.entropy_log_ratio = std::log(seq.ratios.back().to_double());
    }
    // least-squares slope of log d_n over the last third of the run
    std::vector<std::pair<double, double>> pts;
    size_t start = seq.degrees.size() - seq.degrees.size() / 3;
    for (size_t i = start; i < seq.degrees.size(); ++i) {
        if (seq.degrees[i] > 0) pts.emplace_back(static_cast<double>(i), std::log(static_cast<double>(seq.degrees[i])));
    }
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double n = static_cast<double>(pts.size());
        seq.entropy_fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
}

}  // namespace detail

/// Exact iteration of a mapping from the standard initialization (generic
/// constants plus one affine indeterminate in the last slot).
inline DegreeSequence degree_sequence(const dsl::MappingDef& map, const DegreeOptions& opt = {}) {
    if (opt.entries < 1) throw Error(ErrorKind::invalid_input, "degree_sequence: entries must be >= 1");
    if (map.has_symbolic_coeff())
        throw Error(ErrorKind::invalid_input,
                    "degree_sequence: coefficients must be fully numeric (no symbolic specs)");

    DegreeSequence seq;
    seq.order = map.order();
    seq.mode = opt.mode;
    seq.seed = opt.seed;

    if (opt.mode == Mode::Exact) {
        seq.degrees = detail::degrees_with_reseed<QxFrac>(map, opt.entries, opt.seed, opt);
    } else {
        seq.primes = {kModularPrimeA, kModularPrimeB};
        std::vector<long> da, db;
        if (opt.jobs > 1) {
            std::exception_ptr ea, eb;
            std::thread ta([&] {
                try {
                    da = detail::degrees_with_reseed<RatFunc<Fp<kModularPrimeA>>>(map, opt.entries,
                                                                                  opt.seed, opt);
                } catch (...) {
                    ea = std::current_exception();
                }
            });
            std::thread tb([&] {
                try {
                    db = detail::degrees_with_reseed<RatFunc<Fp<kModularPrimeB>>>(map, opt.entries,
                                                                                  opt.seed, opt);
                } catch (...) {
                    eb = std::current_exception();
                }
            });
            ta.join();
            tb.join();
            if (ea) std::rethrow_exception(ea);
            if (eb) std::rethrow_exception(eb);
        } else {
            da = detail::degrees_with_reseed<RatFunc<Fp<kModularPrimeA>>>(map, opt.entries, opt.seed,
                                                                          opt);
            db = detail::degrees_with_reseed<RatFunc<Fp<kModularPrimeB>>>(map, opt.entries, opt.seed,
                                                                          opt);
        }
        if (da == db) {
            seq.degrees = std::move(da);
        } else {
            // modular cancellation detected: recompute exactly rather than
            // report a possibly corrupted sequence
            seq.degrees = detail::degrees_with_reseed<QxFrac>(map, opt.entries, opt.seed, opt);
            seq.fell_back_exact = true;
            seq.reliable = seq.degrees == da || seq.degrees == db;
        }
    }
    detail::finalize(seq);
    return seq;
}

/// Ratio list d_{n+1}/d_n over consecutive positive entries.
inline std::vector<Rat> growth_ratios(const DegreeSequence& seq) {
    int positive = 0;
    for (long d : seq.degrees)
        if (d > 0) ++positive;
    if (positive < 2)
        throw Error(ErrorKind::insufficient_data, "growth_ratios: need at least two positive degrees");
    return seq.ratios;
}

struct EntropyEstimate {
    double log_final_ratio;
    double fit_slope;
};

inline EntropyEstimate entropy_estimate(const DegreeSequence& seq) {
    int positive = 0;
    for (long d : seq.degrees)
        if (d > 0) ++positive;
    if (positive < 4)
        throw Error(ErrorKind::insufficient_data, "entropy_estimate: need at least four positive degrees");
    return {seq.entropy_log_ratio, seq.entropy_fit};
}

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

inline std::string to_csv(const DegreeSequence& seq) {
    std::string out = "n,d_n,ratio\n";
    size_t r = 0;
    for (size_t i = 0; i < seq.degrees.size(); ++i) {
        out += std::to_string(i) + "," + std::to_string(seq.degrees[i]) + ",";
        if (i > 0 && seq.degrees[i - 1] > 0 && seq.degrees[i] > 0 && r < seq.ratios.size()) {
            out += seq.ratios[r].str();
            ++r;
        }
        out += "\n";
    }
    return out;
}

inline std::string to_json(const DegreeSequence& seq) {
    std::string out = "{\n  \"schemaVersion\": 1,\n  \"degrees\": [";
    for (size_t i = 0; i < seq.degrees.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(seq.degrees[i]);
    }
    out += "],\n  \"ratios\": [";
    for (size_t i = 0; i < seq.ratios.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + seq.ratios[i].str() + "\"";
    }
    out += "],\n  \"entropyLogRatio\": " + fmt_double(seq.entropy_log_ratio);
    out += ",\n  \"entropyFit\": " + fmt_double(seq.entropy_fit);
    out += ",\n  \"mode\": \"" + std::string(seq.mode == Mode::Exact ? "exact-rational" : "modular") + "\"";
    if (!seq.primes.empty()) {
        out += ",\n  \"primes\": [";
        for (size_t i = 0; i < seq.primes.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(seq.primes[i]);
        }
        out += "]";
    }
    out += ",\n  \"reliable\": " + std::string(seq.reliable ? "true" : "false");
    out += ",\n  \"seed\": " + std::to_string(seq.seed);
    out += "\n}\n";
    return out;
}

}  // namespace entropyforge::degree

#endif
