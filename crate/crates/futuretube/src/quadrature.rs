//! Gauss–Legendre nodes and deterministic summation helpers.
//!
//! The Bessel engine integrates over fixed 16-point panels; angular grids need
//! rules of caller-chosen size, generated by Newton iteration on the Legendre
//! recurrence. Reductions everywhere in the crate go through compensated
//! (Kahan) accumulators in a fixed order so results are byte-stable run to run.

use num_complex::Complex64;

/// Positive abscissae of the 16-point Gauss–Legendre rule on [−1, 1].
const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_440_185,
    0.281_603_550_779_258_913_230,
    0.458_016_777_657_227_386_342,
    0.617_876_244_402_643_748_447,
    0.755_404_408_355_003_033_895,
    0.865_631_202_387_831_743_880,
    0.944_575_023_073_232_576_078,
    0.989_400_934_991_649_932_596,
];

/// Weights paired with [`GL16_X`].
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_496_285,
    0.182_603_415_044_923_588_867,
    0.169_156_519_395_002_538_189,
    0.149_595_988_816_576_732_081,
    0.124_628_971_255_533_872_052,
    0.095_158_511_682_492_784_810,
    0.062_253_523_938_647_892_863,
    0.027_152_459_411_754_094_852,
];

/// Full 16-point rule as (node, weight) pairs in ascending node order.
pub fn gl16() -> [(f64, f64); 16] {
    let mut out = [(0.0, 0.0); 16];
    for i in 0..8 {
        out[i] = (-GL16_X[7 - i], GL16_W[7 - i]);
        out[8 + i] = (GL16_X[i], GL16_W[i]);
    }
    out
}

/// n-point Gauss–Legendre rule on [−1, 1] via Newton iteration on P_n.
///
/// Nodes come out in ascending order; weights are 2/((1−x²)P_n′(x)²).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule size must be at least 1");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-style initial guess for the i-th root from the top
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, t);
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[n - 1 - i] = t;
        w[n - 1 - i] = weight;
        x[i] = -t;
        w[i] = weight;
    }
    if n % 2 == 1 {
        // midpoint node sits exactly at zero
        x[n / 2] = 0.0;
        let (_, dp) = legendre_pair(n, 0.0);
        w[n / 2] = 2.0 / (dp * dp);
    }
    (x, w)
}

/// (P_n(t), P_n′(t)) by the three-term recurrence.
fn legendre_pair(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

/// Compensated (Kahan) accumulator for deterministic real reductions.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated accumulator for complex values (independent real/imag carries).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
