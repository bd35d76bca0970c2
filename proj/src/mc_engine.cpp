#include "nlamp/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "nlamp/analytic_noise.hpp"
#include "nlamp/csv.hpp"

namespace nlamp::mc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChunk = 1 << 14;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_number(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

long long ipow(long long base, int exponent)
{
    long long out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

long long sum_draws(const ReservoirSpec& reservoir, TrialStream& stream, long long count)
{
    long long total = 0;
    for (long long i = 0; i < count; ++i) {
        total += sample_reservoir(reservoir, stream);
    }
    return total;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x)
{
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : key_(splitmix64(splitmix64(seed) + trial * kGolden))
{
}

std::uint64_t TrialStream::next()
{
    return splitmix64(key_ + (counter_++) * kGolden);
}

double TrialStream::uniform_open_closed()
{
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double TrialStream::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ReservoirSpec::ReservoirSpec(Distribution dist, NumberStats stats, std::vector<double> cdf, double log_ratio)
    : dist_(std::move(dist))
    , stats_(stats)
    , cdf_(std::move(cdf))
    , log_ratio_(log_ratio)
{
}

ReservoirSpec ReservoirSpec::fock(long long n)
{
    if (n < 0) {
        throw std::invalid_argument("fock reservoir: n must be >= 0");
    }
    return {FockReservoir{n}, {static_cast<double>(n), 0.0}, {}, 0.0};
}

ReservoirSpec ReservoirSpec::thermal(double nbar)
{
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        throw std::invalid_argument("thermal reservoir: nbar must be finite and >= 0");
    }
    const double log_ratio = nbar > 0.0 ? std::log(nbar / (nbar + 1.0)) : 0.0;
    return {ThermalReservoir{nbar}, {nbar, nbar * (nbar + 1.0)}, {}, log_ratio};
}

ReservoirSpec ReservoirSpec::empirical(std::vector<double> probs)
{
    if (probs.empty()) {
        throw std::invalid_argument("empirical reservoir: empty probability vector");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("empirical reservoir: probabilities must be finite and >= 0");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("empirical reservoir: probabilities sum to " + format_number(total));
    }
    std::vector<double> cdf;
    cdf.reserve(probs.size());
    double running = 0.0;
    double mean = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) {
        running += probs[n];
        cdf.push_back(running);
        mean += static_cast<double>(n) * probs[n];
    }
    cdf.back() = std::numeric_limits<double>::infinity();
    double var = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) {
        const double d = static_cast<double>(n) - mean;
        var += d * d * probs[n];
    }
    return {EmpiricalReservoir{std::move(probs)}, {mean, var}, std::move(cdf), 0.0};
}

std::string ReservoirSpec::label() const
{
    return std::visit(Overloaded{
                          [](const FockReservoir& r) { return "fock(" + std::to_string(r.n) + ")"; },
                          [](const ThermalReservoir& r) { return "thermal(" + format_number(r.nbar) + ")"; },
                          [](const EmpiricalReservoir& r) {
                              std::string out = "empirical(";
                              for (std::size_t i = 0; i < r.probs.size(); ++i) {
                                  out += (i ? ";" : "") + format_number(r.probs[i]);
                              }
                              return out + ")";
                          },
                      },
                      dist_);
}

ReservoirSpec parse_reservoir(std::string_view text)
{
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.size() < open + 2 || text.back() != ')') {
        throw std::invalid_argument("reservoir '" + std::string(text) + "': expected fock(n), thermal(nbar) or empirical(p0;p1;...)");
    }
    const std::string_view kind = text.substr(0, open);
    const std::string_view body = text.substr(open + 1, text.size() - open - 2);
    if (kind == "fock") {
        const double n = csv::parse_double(body);
        if (n != std::floor(n) || n < 0 || n > 1e15) {
            throw std::invalid_argument("reservoir '" + std::string(text) + "': fock level must be a nonnegative integer");
        }
        return ReservoirSpec::fock(static_cast<long long>(n));
    }
    if (kind == "thermal") {
        return ReservoirSpec::thermal(csv::parse_double(body));
    }
    if (kind == "empirical") {
        std::vector<double> probs;
        for (const auto& field : csv::split(body, ';')) {
            probs.push_back(csv::parse_double(field));
        }
        return ReservoirSpec::empirical(std::move(probs));
    }
    throw std::invalid_argument("reservoir '" + std::string(text) + "': unknown distribution '" + std::string(kind) + "'");
}

long long sample_reservoir(const ReservoirSpec& spec, TrialStream& stream)
{
    switch (spec.dist_.index()) {
    case 0:
        return std::get<FockReservoir>(spec.dist_).n;
    case 1: {
        if (spec.log_ratio_ == 0.0) {
            return 0;
        }
        // P(n >= k) = q^k with q = nbar / (nbar + 1).
        return static_cast<long long>(std::floor(std::log(stream.uniform_open_closed()) / spec.log_ratio_));
    }
    default: {
        const double u = stream.uniform();
        const auto it = std::upper_bound(spec.cdf_.begin(), spec.cdf_.end(), u);
        return static_cast<long long>(it - spec.cdf_.begin());
    }
    }
}

std::string model_name(const Model& model)
{
    return std::visit(Overloaded{
                          [](const model::SingleMode&) { return std::string("SingleMode"); },
                          [](const model::GModes&) { return std::string("GModes"); },
                          [](const model::MultiStepSingle&) { return std::string("MultiStepSingle"); },
                          [](const model::MultiStepMulti&) { return std::string("MultiStepMulti"); },
                          [](const model::Multiplexed&) { return std::string("Multiplexed"); },
                          [](const model::Shelving&) { return std::string("Shelving"); },
                      },
                      model);
}

long long total_gain(const Model& model)
{
    return std::visit(Overloaded{
                          [](const model::SingleMode& m) -> long long { return m.gain; },
                          [](const model::GModes& m) -> long long { return m.gain; },
                          [](const model::MultiStepSingle& m) { return ipow(m.step_gain, m.steps); },
                          [](const model::MultiStepMulti& m) { return ipow(m.step_gain, m.steps); },
                          [](const model::Multiplexed& m) -> long long { return m.gain; },
                          [](const model::Shelving& m) -> long long { return m.gain; },
                      },
                      model);
}

int step_gain(const Model& model)
{
    if (const auto* m = std::get_if<model::MultiStepSingle>(&model)) {
        return m->step_gain;
    }
    if (const auto* m = std::get_if<model::MultiStepMulti>(&model)) {
        return m->step_gain;
    }
    return 0;
}

int step_count(const Model& model)
{
    if (const auto* m = std::get_if<model::MultiStepSingle>(&model)) {
        return m->steps;
    }
    if (const auto* m = std::get_if<model::MultiStepMulti>(&model)) {
        return m->steps;
    }
    return 0;
}

long long reservoir_draws(const Model& model)
{
    return std::visit(Overloaded{
                          [](const model::SingleMode&) -> long long { return 1; },
                          [](const model::GModes& m) -> long long { return m.gain; },
                          [](const model::MultiStepSingle& m) -> long long { return m.steps; },
                          [](const model::MultiStepMulti& m) {
                              long long total = 0;
                              for (int n = 1; n <= m.steps; ++n) {
                                  total += ipow(m.step_gain, n);
                              }
                              return total;
                          },
                          [](const model::Multiplexed& m) {
                              return static_cast<long long>(m.gain) * m.max_photons;
                          },
                          [](const model::Shelving& m) -> long long { return m.cavity_modes; },
                      },
                      model);
}

void validate(const Model& model)
{
    auto require = [](bool ok, const char* msg) {
        if (!ok) {
            throw std::invalid_argument(msg);
        }
    };
    std::visit(Overloaded{
                   [&](const model::SingleMode& m) { require(m.gain >= 1, "SingleMode: G must be >= 1"); },
                   [&](const model::GModes& m) { require(m.gain >= 1, "GModes: G must be >= 1"); },
                   [&](const model::MultiStepSingle& m) {
                       require(m.step_gain >= 2, "MultiStepSingle: g must be >= 2");
                       require(m.steps >= 1, "MultiStepSingle: N must be >= 1");
                       require(std::pow(m.step_gain, m.steps) < 1e12, "MultiStepSingle: g^N too large");
                   },
                   [&](const model::MultiStepMulti& m) {
                       require(m.step_gain >= 2, "MultiStepMulti: g must be >= 2");
                       require(m.steps >= 1, "MultiStepMulti: N must be >= 1");
                       require(std::pow(m.step_gain, m.steps) < 1e9, "MultiStepMulti: g^N too large");
                   },
                   [&](const model::Multiplexed& m) {
                       require(m.gain >= 1, "Multiplexed: G must be >= 1");
                       require(m.max_photons >= 0, "Multiplexed: photon budget must be >= 0");
                   },
                   [&](const model::Shelving& m) {
                       require(m.gain >= 1, "Shelving: G must be >= 1");
                       require(m.cavity_modes >= 1 && m.cavity_modes <= m.gain,
                               "Shelving: cavity mode count must lie in [1, G]");
                   },
               },
               model);
}

void validate(const ScenarioSpec& spec)
{
    validate(spec.model);
    if (spec.input_n_a < 0) {
        throw std::invalid_argument("scenario: n_a must be >= 0");
    }
    if (spec.trials < 1) {
        throw std::invalid_argument("scenario: trials must be >= 1");
    }
    if (const auto* m = std::get_if<model::Multiplexed>(&spec.model); m && spec.input_n_a > m->max_photons) {
        throw std::invalid_argument("Multiplexed: n_a exceeds the photon budget of the mode bank");
    }
}

void MomentAccumulator::add(long long x)
{
    const __int128 v = x;
    const __int128 v2 = v * v;
    ++count_;
    sums_[0] += v;
    sums_[1] += v2;
    sums_[2] += v2 * v;
    sums_[3] += v2 * v2;
}

void MomentAccumulator::merge(const MomentAccumulator& other)
{
    count_ += other.count_;
    for (int k = 0; k < 4; ++k) {
        sums_[k] += other.sums_[k];
    }
}

double SampleStats::std_error_of_mean() const
{
    return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
}

SampleStats finalize(const MomentAccumulator& acc)
{
    SampleStats out;
    out.count = acc.count();
    if (out.count == 0) {
        return out;
    }
    const auto n = static_cast<__int128>(acc.count());
    const __int128 s1 = acc.power_sum(1);
    const __int128 s2 = acc.power_sum(2);
    const __int128 s3 = acc.power_sum(3);
    const __int128 s4 = acc.power_sum(4);

    // Shift by an integer near the mean so the binomial re-expansion is exact
    // and the remaining floating-point work sees centred sums only.
    __int128 c = s1 / n;
    if (s1 < 0 && s1 % n != 0) {
        --c;
    }
    const __int128 t1 = s1 - c * n;
    const __int128 t2 = s2 - 2 * c * s1 + c * c * n;
    const __int128 t3 = s3 - 3 * c * s2 + 3 * c * c * s1 - c * c * c * n;
    const __int128 t4 = s4 - 4 * c * s3 + 6 * c * c * s2 - 4 * c * c * c * s1 + c * c * c * c * n;

    const auto nd = static_cast<long double>(acc.count());
    const long double d = static_cast<long double>(t1) / nd;
    const long double e2 = static_cast<long double>(t2) / nd;
    const long double e3 = static_cast<long double>(t3) / nd;
    const long double e4 = static_cast<long double>(t4) / nd;
    const long double m2 = std::max(0.0L, e2 - d * d);
    const long double m4 = std::max(0.0L, e4 - 4 * d * e3 + 6 * d * d * e2 - 3 * d * d * d * d);

    out.mean = static_cast<double>(static_cast<long double>(c) + d);
    if (out.count < 2) {
        return out;
    }
    out.variance = static_cast<double>(m2 * nd / (nd - 1));
    if (out.count > 3) {
        const long double var_of_var = (m4 - (nd - 3) / (nd - 1) * m2 * m2) / nd;
        out.std_error_of_variance = static_cast<double>(std::sqrt(std::max(0.0L, var_of_var)));
    }
    return out;
}

long long trial_output(const ScenarioSpec& spec, std::uint64_t trial)
{
    TrialStream stream(spec.seed, trial);
    const auto& res = spec.reservoir;
    const long long signal = total_gain(spec.model) * spec.input_n_a;
    return std::visit(
        Overloaded{
            [&](const model::SingleMode&) { return sample_reservoir(res, stream) + signal; },
            [&](const model::GModes& m) { return sum_draws(res, stream, m.gain) + signal; },
            [&](const model::MultiStepSingle& m) {
                // Stage k's reservoir is amplified by the remaining N - k stages.
                long long out = 0;
                for (int k = 1; k <= m.steps; ++k) {
                    out += ipow(m.step_gain, m.steps - k) * sample_reservoir(res, stream);
                }
                return out + signal;
            },
            [&](const model::MultiStepMulti& m) {
                // g^n reservoir modes at stage n, each amplified by g^(N - n) downstream.
                long long out = 0;
                for (int n = 1; n <= m.steps; ++n) {
                    out += ipow(m.step_gain, m.steps - n) * sum_draws(res, stream, ipow(m.step_gain, n));
                }
                return out + signal;
            },
            [&](const model::Multiplexed& m) {
                return sum_draws(res, stream, static_cast<long long>(m.gain) * m.max_photons) + signal;
            },
            [&](const model::Shelving& m) {
                // G n fluorescence excitations split evenly; remainder to the lowest modes.
                const long long base = signal / m.cavity_modes;
                const long long extra = signal % m.cavity_modes;
                long long out = 0;
                for (int j = 0; j < m.cavity_modes; ++j) {
                    out += sample_reservoir(res, stream) + base + (j < extra ? 1 : 0);
                }
                return out;
            },
        },
        spec.model);
}

MomentAccumulator accumulate_trials(const ScenarioSpec& spec, std::uint64_t first, std::uint64_t count,
                                    unsigned threads)
{
    validate(spec.model);
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

    std::atomic<std::uint64_t> next_chunk{0};
    std::vector<MomentAccumulator> partial(threads);
    auto work = [&](unsigned worker) {
        for (;;) {
            const std::uint64_t chunk = next_chunk.fetch_add(1);
            if (chunk >= chunks) {
                return;
            }
            const std::uint64_t begin = first + chunk * kChunk;
            const std::uint64_t end = first + std::min(count, (chunk + 1) * kChunk);
            for (std::uint64_t t = begin; t < end; ++t) {
                partial[worker].add(trial_output(spec, t));
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(work, w);
        }
    }
    MomentAccumulator total;
    for (const auto& p : partial) {
        total.merge(p);
    }
    return total;
}

SampleStats run_scenario(const ScenarioSpec& spec, unsigned threads)
{
    validate(spec);
    return finalize(accumulate_trials(spec, 0, spec.trials, threads));
}

SampleStats run_shelving(const ScenarioSpec& spec, unsigned threads)
{
    if (!std::holds_alternative<model::Shelving>(spec.model)) {
        throw std::invalid_argument("run_shelving: scenario model is not Shelving");
    }
    return run_scenario(spec, threads);
}

SampleStats run_multiplexed(int gain, int n, int max_photons, const ReservoirSpec& reservoir, std::uint64_t trials,
                            std::uint64_t seed, unsigned threads)
{
    return run_scenario({model::Multiplexed{gain, max_photons}, n, reservoir, trials, seed}, threads);
}

double analytic_variance(const ScenarioSpec& spec)
{
    validate(spec);
    const NumberStats a{static_cast<double>(spec.input_n_a), 0.0};
    const NumberStats& b = spec.reservoir.stats();
    const auto G = static_cast<double>(total_gain(spec.model));
    return std::visit(Overloaded{
                          [&](const model::SingleMode&) { return var_single_mode(G, a, b); },
                          [&](const model::GModes&) { return var_g_modes(G, a, b); },
                          [&](const model::MultiStepSingle& m) { return var_multistep_single(G, m.step_gain, a, b); },
                          [&](const model::MultiStepMulti& m) { return var_multistep_multi(G, m.step_gain, a, b); },
                          [&](const model::Multiplexed& m) {
                              return static_cast<double>(m.gain) * m.max_photons * b.variance;
                          },
                          [&](const model::Shelving& m) { return m.cavity_modes * b.variance; },
                      },
                      spec.model);
}

double analytic_mean(const ScenarioSpec& spec)
{
    validate(spec);
    const double nbar = spec.reservoir.stats().mean;
    const auto G = static_cast<double>(total_gain(spec.model));
    double weight = static_cast<double>(reservoir_draws(spec.model));
    if (const auto* m = std::get_if<model::MultiStepSingle>(&spec.model)) {
        weight = (G - 1) / (m->step_gain - 1);
    } else if (const auto* mm = std::get_if<model::MultiStepMulti>(&spec.model)) {
        weight = mm->steps * G;
    }
    return weight * nbar + G * spec.input_n_a;
}

double variance_z_score(const SampleStats& stats, double analytic)
{
    const double diff = stats.variance - analytic;
    if (stats.std_error_of_variance == 0.0) {
        if (diff == 0.0) {
            return 0.0;
        }
        return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return diff / stats.std_error_of_variance;
}

}  // namespace nlamp::mc
