// Serial reference vs OpenMP path for the parallel kernels.
// Each benchmark takes Arg 0 (serial) or 1 (parallel).

#include <benchmark/benchmark.h>

#include <random>

#include "radiomark/features/catalog.hpp"
#include "radiomark/features/texture.hpp"
#include "radiomark/features/wavelet.hpp"
#include "radiomark/imaging/preprocess.hpp"
#include "radiomark/selection/lasso.hpp"
#include "radiomark/synth/phantom.hpp"

using namespace radiomark;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

const Phantom& phantom() {
    static const Phantom ph = [] {
        PhantomSpec s;
        s.dims = Dims{64, 64, 32};
        s.center = {31.5, 31.5, 15.5};
        s.semi_axes = {20.0, 18.0, 10.0};
        s.positive = true;
        s.seed = 1;
        return make_phantom(s, Execution::serial);
    }();
    return ph;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_GaussianSmooth(benchmark::State& state) {
    const auto& ph = phantom();
    const std::vector<double> field(ph.volume.voxels().begin(), ph.volume.voxels().end());
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_smooth(field, ph.volume.dims(), 2.0, mode(state)));
    label(state);
}

void BM_Resample(benchmark::State& state) {
    const auto& ph = phantom();
    for (auto _ : state) benchmark::DoNotOptimize(resample(ph.volume, ph.mask, Spacing{0.7, 0.7, 0.7}, mode(state)));
    label(state);
}

void BM_Wavelet(benchmark::State& state) {
    const auto& ph = phantom();
    for (auto _ : state) benchmark::DoNotOptimize(wavelet_subbands(ph.volume, mode(state)));
    label(state);
}

void BM_GlcmGlrlm(benchmark::State& state) {
    const auto& ph = phantom();
    const auto roi = discretize(ph.volume, ph.mask, 32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(glcm(roi, mode(state)));
        benchmark::DoNotOptimize(glrlm(roi, mode(state)));
    }
    label(state);
}

void BM_ExtractStudy(benchmark::State& state) {
    const auto& ph = phantom();
    Study st{"bench", VisitTime::parse("2020-01-01"), 1, {{"T2W", SequenceImage{ph.volume, ph.mask}}}};
    const FeatureCatalogConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(extract_study(st, cfg, mode(state)));
    label(state);
}

void BM_CrossValidation(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Eigen::MatrixXd X(300, 200);
    Eigen::VectorXd y(300);
    for (int i = 0; i < 300; ++i) {
        for (int j = 0; j < 200; ++j) X(i, j) = g(rng);
        y(i) = X(i, 0) - X(i, 1) + 0.5 * X(i, 2) + g(rng) > 0 ? 1 : 0;
    }
    const auto grid = lambda_grid(X, y, 50, 1e-2);
    for (auto _ : state)
        benchmark::DoNotOptimize(cv_select(X, y, 5, grid, SelectionRule::one_se, 7, {}, mode(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_GaussianSmooth)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Resample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wavelet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GlcmGlrlm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractStudy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
