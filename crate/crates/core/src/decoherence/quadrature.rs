//! Globally adaptive Gauss-Kronrod (21-point) integration on a finite interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1], descending; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_452_540,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_segments: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-15,
            max_segments: 400_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error: f64,
    pub segments: usize,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// 21-point Kronrod estimate with the QUADPACK error heuristic.
pub fn gauss_kronrod_21(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = kronrod * half;
    let resabs = abs_sum * half.abs();
    let resasc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(roundoff);
    }
    (result, err)
}

/// Integrate `f` over `[breaks[0], breaks[last]]`, starting from the given
/// panels and bisecting the worst one until the total error estimate drops
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    breaks: &[f64],
    opts: AdaptiveOptions,
) -> Result<QuadratureResult> {
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParams(
            "quadrature breakpoints must be strictly increasing".into(),
        ));
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    let mut settled = Vec::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for w in breaks.windows(2) {
        let (v, e) = gauss_kronrod_21(&f, w[0], w[1]);
        value += v;
        error += e;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }
    let mut segments = heap.len();
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NumericalFailure(
                "non-finite integrand value".into(),
            ));
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(QuadratureResult {
                value,
                abs_error: error,
                segments,
            });
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if segments >= opts.max_segments || !(mid > worst.a && mid < worst.b) {
            settled.push(worst);
            if segments >= opts.max_segments {
                break;
            }
            continue;
        }
        let (lv, le) = gauss_kronrod_21(&f, worst.a, mid);
        let (rv, re) = gauss_kronrod_21(&f, mid, worst.b);
        value += lv + rv - worst.value;
        error += le + re - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        segments += 1;
    }
    // recompute from scratch to drop accumulated cancellation in the running sums
    let value: f64 = heap.iter().chain(settled.iter()).map(|s| s.value).sum();
    let error: f64 = heap.iter().chain(settled.iter()).map(|s| s.error).sum();
    if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
        return Ok(QuadratureResult {
            value,
            abs_error: error,
            segments,
        });
    }
    Err(Error::QuadratureNonConvergent {
        estimate: value,
        error,
        segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_degree_30() {
        let (v, _) = gauss_kronrod_21(&|x: f64| x.powi(30), -1.0, 1.0);
        assert!((v - 2.0 / 31.0).abs() < 1e-14);
        let weight_sum: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((weight_sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn embedded_gauss_rule_is_exact_for_degree_18() {
        let g: f64 = (0..5)
            .map(|k| 2.0 * WG[k] * XGK[2 * k + 1].powi(18))
            .sum();
        assert!((g - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_oscillation_and_endpoint_singularity() {
        let r = integrate(|x| (50.0 * x).cos(), &[0.0, 1.0], AdaptiveOptions::default()).unwrap();
        assert!((r.value - 50f64.sin() / 50.0).abs() < 1e-12);
        let r = integrate(|x| 1.0 / x.sqrt(), &[0.0, 1.0], AdaptiveOptions::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn bad_breakpoints_rejected() {
        assert!(integrate(|x| x, &[1.0, 0.0], AdaptiveOptions::default()).is_err());
        assert!(integrate(|x| x, &[0.0], AdaptiveOptions::default()).is_err());
    }

    #[test]
    fn segment_cap_reports_non_convergence() {
        let opts = AdaptiveOptions {
            max_segments: 3,
            ..AdaptiveOptions::default()
        };
        let err = integrate(|x| (1e4 * x * x).sin(), &[0.0, 10.0], opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergent { .. }));
    }
}
